#include "a2b/tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace a2b {

namespace {

std::array<int, 3> sorted3(int i, int j, int k) {
    std::array<int, 3> t{i, j, k};
    std::sort(t.begin(), t.end());
    return t;
}

Alcoved vertical_line(const Rational& h) {
    Alcoved v;
    v.bound(2, 0, h);
    v.bound(0, 2, -h);
    return v;
}

}  // namespace

const NormPoint& SSetData::tripod_point(int i, int j, int k) const { return tripod.at(sorted3(i, j, k)); }

Rational SSetData::b(int k, const NormPoint& x) const { return busemann_raw(center_of(flags[k]), x); }

SSetData make_sset_data(long p, const std::vector<Flag>& flags) {
    auto v = is_sset(p, flags);
    if (!v.ok) throw std::invalid_argument("not an S-set: " + v.certificate);
    SSetData s;
    s.p = p;
    s.flags = flags;
    int n = s.size();
    s.flats.assign(n, std::vector<Flat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s.flats[i][j] = flat(flags[i], flags[j]);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                auto t = find_tripod(p, flags[i], flags[j], flags[k]);
                if (!t.tripod) throw std::logic_error("zero shift without tripod");
                s.tripod.emplace(std::array<int, 3>{i, j, k}, t.tripod->point);
            }
    return s;
}

FPoint fpoint(const SSetData& s, int i, int j, const Vec3& c) {
    return FPoint{i, j, c, chart_point(s.p, s.flats[i][j].frame, c)};
}

Rational b_coordinate(const SSetData& s, int k, const FPoint& x) {
    if (k == x.i || k == x.j) return s.b(k, x.x);
    const NormPoint& p = s.tripod_point(x.i, x.j, k);
    return s.b(k, p) + abs(s.b(x.i, x.x) - s.b(x.i, p));
}

Rational b_coordinate_dual(const SSetData& s, int k, const FPoint& x) {
    if (k == x.i || k == x.j) return s.b(k, x.x);
    const NormPoint& p = s.tripod_point(x.i, x.j, k);
    const Mat3& F = s.flats[x.i][x.j].frame;
    bool below = s.b(x.i, x.x) <= s.b(x.i, p);
    const Mat3& E = below ? s.flats[x.i][k].frame : s.flats[x.j][k].frame;
    Alcoved r = apartment_region(s.p, F, E).meet(vertical_line(x.c[2] - x.c[0]));
    auto y = r.some_point();
    if (!y) throw std::logic_error("vertical line misses the flat intersection");
    return s.b(k, chart_point(s.p, F, *y));
}

std::vector<Rational> b_vector(const SSetData& s, const FPoint& x) {
    std::vector<Rational> B(s.size());
    for (int k = 0; k < s.size(); ++k) B[k] = b_coordinate(s, k, x);
    return B;
}

Rational tree_distance(const std::vector<Rational>& bx, const std::vector<Rational>& by) {
    Rational d = 0;
    for (size_t k = 0; k < bx.size(); ++k) d = std::max(d, Rational(abs(bx[k] - by[k])));
    return d;
}

TreePoint MetricTree::vertex_point(int v) const {
    TreePoint t;
    t.vertex = v;
    t.B = vertices[v];
    return t;
}

TreePoint MetricTree::edge_point(int e, const Rational& off) const {
    const TreeEdge& ed = edges[e];
    TreePoint t;
    t.edge = e;
    t.offset = off;
    t.B = vertices[ed.u];
    for (int k = 0; k < ends; ++k) {
        if (ed.v >= 0)
            t.B[k] += off * (vertices[ed.v][k] - vertices[ed.u][k]) / ed.len;
        else
            t.B[k] += k == ed.end ? Rational(-off) : off;
    }
    return t;
}

Rational MetricTree::graph_distance(const TreePoint& a, const TreePoint& b) const {
    if (a.edge >= 0 && a.edge == b.edge) return abs(a.offset - b.offset);
    auto anchors = [&](const TreePoint& t) {
        std::vector<std::pair<int, Rational>> out;
        if (t.vertex >= 0) {
            out.push_back({t.vertex, Rational(0)});
            return out;
        }
        const TreeEdge& e = edges[t.edge];
        out.push_back({e.u, t.offset});
        if (e.v >= 0) out.push_back({e.v, e.len - t.offset});
        return out;
    };
    std::optional<Rational> best;
    for (auto& [u, du] : anchors(a))
        for (auto& [v, dv] : anchors(b)) {
            Rational d = du + vdist[u][v] + dv;
            if (!best || d < *best) best = d;
        }
    return *best;
}

MetricTree build_tree(const SSetData& s) {
    MetricTree t;
    int n = s.size();
    t.ends = n;
    std::map<std::array<int, 3>, int> median;
    for (const auto& [key, p] : s.tripod) {
        auto B = b_vector(s, fpoint(s, key[0], key[1], weights_in(p, s.flats[key[0]][key[1]].frame)));
        int id = -1;
        for (size_t v = 0; v < t.vertices.size(); ++v)
            if (t.vertices[v] == B) id = int(v);
        if (id < 0) {
            id = int(t.vertices.size());
            t.vertices.push_back(B);
        }
        median[key] = id;
    }
    t.pair_level.assign(n, std::vector<Rational>(n));
    std::set<std::pair<int, int>> seen_edges, seen_rays;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> on;
            for (int k = 0; k < n; ++k)
                if (k != i && k != j) on.push_back(median[sorted3(i, j, k)]);
            std::sort(on.begin(), on.end());
            on.erase(std::unique(on.begin(), on.end()), on.end());
            std::sort(on.begin(), on.end(),
                      [&](int a, int b) { return t.vertices[a][i] < t.vertices[b][i]; });
            t.pair_level[i][j] = t.pair_level[j][i] = t.vertices[on[0]][i] + t.vertices[on[0]][j];
            auto ray = [&](int end, int v) {
                if (seen_rays.insert({end, v}).second) t.edges.push_back(TreeEdge{v, -1, end, 0});
            };
            ray(i, on.front());
            ray(j, on.back());
            for (size_t a = 0; a + 1 < on.size(); ++a) {
                int u = on[a], v = on[a + 1];
                if (seen_edges.insert({std::min(u, v), std::max(u, v)}).second)
                    t.edges.push_back(TreeEdge{u, v, -1, t.vertices[v][i] - t.vertices[u][i]});
            }
        }
    int m = int(t.vertices.size());
    std::vector<std::vector<std::optional<Rational>>> d(m, std::vector<std::optional<Rational>>(m));
    for (int v = 0; v < m; ++v) d[v][v] = Rational(0);
    for (const auto& e : t.edges)
        if (e.v >= 0) d[e.u][e.v] = d[e.v][e.u] = e.len;
    for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (d[a][k] && d[k][b] && (!d[a][b] || *d[a][k] + *d[k][b] < *d[a][b])) d[a][b] = *d[a][k] + *d[k][b];
    t.vdist.assign(m, std::vector<Rational>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (!d[a][b]) throw std::logic_error("tree is disconnected");
            t.vdist[a][b] = *d[a][b];
        }
    return t;
}

int four_point_failures(const MetricTree& t) {
    int fails = 0;
    int n = t.ends;
    const auto& L = t.pair_level;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    std::array<Rational, 3> s{L[a][b] + L[c][d], L[a][c] + L[b][d], L[a][d] + L[b][c]};
                    std::sort(s.begin(), s.end());
                    if (s[1] != s[2]) ++fails;
                }
    return fails;
}

std::optional<TreePoint> locate(const MetricTree& t, const std::vector<Rational>& B) {
    for (size_t v = 0; v < t.vertices.size(); ++v)
        if (t.vertices[v] == B) return t.vertex_point(int(v));
    for (size_t e = 0; e < t.edges.size(); ++e) {
        const TreeEdge& ed = t.edges[e];
        Rational off = tree_distance(B, t.vertices[ed.u]);
        if (off <= 0 || (ed.v >= 0 && off >= ed.len)) continue;
        TreePoint tp = t.edge_point(int(e), off);
        if (tp.B == B) return tp;
    }
    return std::nullopt;
}

TreePoint project(const SSetData& s, const MetricTree& t, const FPoint& x) {
    auto tp = locate(t, b_vector(s, x));
    if (!tp) throw std::logic_error("point does not project to the tree");
    return *tp;
}

std::vector<std::pair<int, int>> membership_pairs(const MetricTree& t, const std::vector<Rational>& B) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < t.ends; ++i)
        for (int j = i + 1; j < t.ends; ++j)
            if (B[i] + B[j] == t.pair_level[i][j]) out.push_back({i, j});
    return out;
}

ClassSet class_set(const SSetData& s, const MetricTree& t, const std::vector<Rational>& B) {
    ClassSet cs;
    cs.pairs = membership_pairs(t, B);
    if (cs.pairs.empty()) throw std::invalid_argument("point is not on the tree");
    cs.i0 = cs.pairs[0].first;
    cs.j0 = cs.pairs[0].second;
    const Mat3& F = s.flats[cs.i0][cs.j0].frame;
    cs.c = Alcoved::whole();
    for (size_t a = 1; a < cs.pairs.size(); ++a)
        cs.c = cs.c.meet(apartment_region(s.p, F, s.flats[cs.pairs[a].first][cs.pairs[a].second].frame));
    Rational kappa = s.b(cs.i0, chart_point(s.p, F, Vec3{0, 0, 0}));
    cs.level = B[cs.i0] - kappa;
    cs.on_level = cs.c.meet(vertical_line(cs.level));
    cs.member = cs.on_level.some_point();
    return cs;
}

Realization realize(const SSetData& s, const MetricTree& t, const FPoint& x, const FPoint& y) {
    Realization r;
    auto bx = b_vector(s, x), by = b_vector(s, y);
    r.D = tree_distance(bx, by);
    auto px = membership_pairs(t, bx), py = membership_pairs(t, by);
    std::optional<std::pair<int, int>> common;
    for (auto& a : px)
        if (std::find(py.begin(), py.end(), a) != py.end()) {
            common = a;
            break;
        }
    if (!common) return r;
    r.i = common->first;
    r.j = common->second;
    const Mat3& F = s.flats[r.i][r.j].frame;
    Rational kappa = s.b(r.i, chart_point(s.p, F, Vec3{0, 0, 0}));
    auto at = [&](const Rational& B) {
        Rational h = B - kappa;
        return fpoint(s, r.i, r.j, Vec3{-h / 2, 0, h / 2});
    };
    r.x = at(bx[r.i]);
    r.y = at(by[r.i]);
    r.verified = 2 * distance2(r.x.x, r.y.x) == r.D * r.D && b_vector(s, r.x) == bx && b_vector(s, r.y) == by;
    return r;
}

FPoint random_fpoint(const SSetData& s, std::mt19937_64& rng, int radius) {
    int n = s.size();
    std::uniform_int_distribution<int> u(0, n - 1);
    int i = u(rng), j = u(rng);
    while (j == i) j = u(rng);
    int k = u(rng);
    while (k == i || k == j) k = u(rng);
    Vec3 c = weights_in(s.tripod_point(i, j, k), s.flats[i][j].frame);
    c[0] += random_rational(rng, -radius, radius, 2);
    c[2] += random_rational(rng, -radius, radius, 2);
    return fpoint(s, i, j, c);
}

std::string tree_dot(const MetricTree& t) {
    std::ostringstream o;
    o << "graph tree {\n  // edge lengths scaled by sqrt(2)\n";
    for (size_t v = 0; v < t.vertices.size(); ++v) {
        o << "  v" << v << " [label=\"v" << v << "\"];\n";
    }
    for (int e = 0; e < t.ends; ++e) o << "  end" << e << " [shape=box,label=\"eta" << e << "\"];\n";
    for (const auto& e : t.edges) {
        if (e.v >= 0)
            o << "  v" << e.u << " -- v" << e.v << " [label=\"" << to_string(e.len) << "\"];\n";
        else
            o << "  v" << e.u << " -- end" << e.end << " [style=dashed];\n";
    }
    o << "}\n";
    return o.str();
}

}  // namespace a2b
