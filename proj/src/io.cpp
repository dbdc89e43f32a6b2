#include "a2b/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace a2b {

json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw std::invalid_argument("rational must be a \"num/den\" string or an integer");
}

json to_json(const Vec3& v) { return json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }

Vec3 vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-vector");
    return {rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2])};
}

json to_json(const Flag& f) { return {{"line", to_json(f.line)}, {"plane", to_json(f.plane)}}; }

Flag flag_from_json(const json& j) { return make_flag(vec_from_json(j.at("line")), vec_from_json(j.at("plane"))); }

json to_json(const NormPoint& x) {
    json cols = json::array();
    for (int c = 0; c < 3; ++c) cols.push_back(to_json(col(x.frame, c)));
    return {{"frame", cols}, {"weights", to_json(x.w)}};
}

NormPoint point_from_json(long p, const json& j) {
    const json& cols = j.at("frame");
    if (!cols.is_array() || cols.size() != 3) throw std::invalid_argument("frame needs three columns");
    Mat3 F = from_cols(vec_from_json(cols[0]), vec_from_json(cols[1]), vec_from_json(cols[2]));
    return norm_point(p, F, vec_from_json(j.at("weights")));
}

json to_json(const Scene& s) {
    json fl = json::array();
    for (const auto& f : s.flags) fl.push_back(to_json(f));
    return {{"p", s.p}, {"seed", s.seed}, {"flags", fl}};
}

Scene scene_from_json(const json& j) {
    Scene s;
    s.p = j.at("p").get<long>();
    require_prime(s.p);
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& f : j.at("flags")) s.flags.push_back(flag_from_json(f));
    return s;
}

Scene read_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return scene_from_json(json::parse(in));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

json exact_json(const Rational& q, int radicand) {
    json j = {{"exact", to_string(q)}, {"float", q.get_d() / std::sqrt(double(radicand))}};
    if (radicand != 1) j["scale"] = "1/sqrt(" + std::to_string(radicand) + ")";
    return j;
}

json tree_json(const SSetData& s, const MetricTree& t) {
    json j;
    j["ends"] = t.ends;
    j["unit"] = "sqrt(2)";
    json vs = json::array();
    for (const auto& B : t.vertices) {
        json b = json::array();
        for (const auto& x : B) b.push_back(to_json(x));
        vs.push_back({{"B", b}});
    }
    j["vertices"] = vs;
    json es = json::array();
    for (const auto& e : t.edges) {
        json je = {{"u", e.u}};
        if (e.v >= 0) {
            je["v"] = e.v;
            je["length"] = exact_json(e.len, 2);
        } else {
            je["end"] = e.end;
        }
        es.push_back(je);
    }
    j["edges"] = es;
    j["four_point_failures"] = four_point_failures(t);
    json tp = json::array();
    for (const auto& [k, x] : s.tripod) tp.push_back({{"triple", {k[0], k[1], k[2]}}, {"point", to_json(x)}});
    j["tripods"] = tp;
    return j;
}

json report_json(const VerificationReport& r) {
    json v = json::array();
    for (const auto& w : r.violations)
        v.push_back({{"pair", w.pair}, {"x", to_json(w.x)}, {"y", to_json(w.y)}, {"t", to_string(w.t)}});
    return {{"name", r.name},   {"mode", r.mode},        {"requested", r.requested},
            {"pairs", r.pairs}, {"checks", r.checks},    {"starved", r.starved},
            {"seed", r.seed},   {"violations", v},
            {"notes", r.notes}};
}

json verify_json(const VerifyResult& r) {
    json reps = json::array();
    for (const auto& x : r.reports) reps.push_back(report_json(x));
    return {{"exit_code", r.code}, {"hypothesis_failures", r.hypothesis_failures}, {"reports", reps}};
}

json shift_table(const Scene& s) {
    json rows = json::array();
    int n = int(s.flags.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                json row = {{"triple", {i, j, k}}};
                if (!opposite(s.flags[i], s.flags[j]) || !opposite(s.flags[i], s.flags[k]) ||
                    !opposite(s.flags[j], s.flags[k]))
                    row["shift"] = nullptr;
                else
                    row["shift"] = exact_json(shift(s.p, s.flags[i], s.flags[j], s.flags[k]), 6);
                rows.push_back(row);
            }
    return rows;
}

namespace {

// x = c3 - c1, y = 2 c2 - c1 - c3; screen coordinates x/sqrt2, y/sqrt6
struct XY {
    double x, y;
};

XY project(const Vec3& c) {
    double a = Rational(c[2] - c[0]).get_d(), b = Rational(2 * c[1] - c[0] - c[2]).get_d();
    return {a / std::sqrt(2.0), b / std::sqrt(6.0)};
}

Vec3 unproject(const Rational& x, const Rational& y) {
    return add(scale(x / 2, Vec3{-1, 0, 1}), scale(y / 6, Vec3{-1, 2, -1}));
}

struct Canvas {
    Rational x0, x1, y0, y1;
    double scale = 30;
    std::ostringstream body;

    Polygon box() const {
        Polygon P;
        P.add_range(Vec3{-1, 0, 1}, x0, x1);
        P.add_range(Vec3{-1, 2, -1}, y0, y1);
        return P;
    }
    double sx(const XY& p) const { return (p.x - x0.get_d() / std::sqrt(2.0)) * scale + 20; }
    double sy(const XY& p) const { return (y1.get_d() / std::sqrt(6.0) - p.y) * scale + 20; }
    double width() const { return Rational(x1 - x0).get_d() / std::sqrt(2.0) * scale + 40; }
    double height() const { return Rational(y1 - y0).get_d() / std::sqrt(6.0) * scale + 40; }

    void poly(const Polygon& P, const std::string& style) {
        auto vs = P.meet(box()).vertices();
        if (vs.empty()) return;
        std::vector<XY> pts;
        for (const auto& v : vs) pts.push_back(project(v));
        XY m{0, 0};
        for (auto& p : pts) m.x += p.x / pts.size(), m.y += p.y / pts.size();
        std::sort(pts.begin(), pts.end(), [&](const XY& a, const XY& b) {
            return std::atan2(a.y - m.y, a.x - m.x) < std::atan2(b.y - m.y, b.x - m.x);
        });
        body << "<polygon points=\"";
        for (auto& p : pts) body << sx(p) << "," << sy(p) << " ";
        body << "\" " << style << "/>\n";
    }
    void dot(const Vec3& c, const std::string& style, double r = 3) {
        XY p = project(c);
        body << "<circle cx=\"" << sx(p) << "\" cy=\"" << sy(p) << "\" r=\"" << r << "\" " << style << "/>\n";
    }
};

}  // namespace

std::string render_flat_svg(const RankOneSet& r, int i, int j, int grid) {
    int n = r.s.size();
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw std::invalid_argument("unknown pair");
    const Mat3& F = r.frame(i, j);
    std::vector<Vec3> tri;
    for (int k = 0; k < n; ++k)
        if (k != i && k != j) tri.push_back(weights_in(r.s.tripod_point(i, j, k), F));
    Rational cx = 0, cy = 0;
    for (const auto& c : tri) {
        cx += (c[2] - c[0]) / int(tri.size());
        cy += (2 * c[1] - c[0] - c[2]) / int(tri.size());
    }
    cx = floor_rational(cx);
    cy = floor_rational(cy);
    Rational half = std::max(Rational(8), floor_rational(2 * r.cfg.R6 / 3));
    Canvas cv;
    cv.x0 = cx - half;
    cv.x1 = cx + half;
    cv.y0 = cy - 2 * half;
    cv.y1 = cy + 2 * half;
    cv.scale = 600 / (Rational(cv.x1 - cv.x0).get_d() / std::sqrt(2.0));

    if (grid > 0) {
        for (int a = 0; a < grid; ++a)
            for (int b = 0; b < grid; ++b) {
                Rational x = cv.x0 + (cv.x1 - cv.x0) * ratio(2 * a + 1, 2 * grid);
                Rational y = cv.y0 + (cv.y1 - cv.y0) * ratio(2 * b + 1, 2 * grid);
                NormPoint q = chart_point(r.s.p, F, unproject(x, y));
                bool k = K_member(r, q);
                if (!k) continue;
                bool c = c_member(r, q);
                cv.dot(unproject(x, y), c ? "fill=\"#2e7d32\" fill-opacity=\"0.5\"" : "fill=\"#a5d6a7\" fill-opacity=\"0.5\"",
                       2);
            }
    }
    // walls c_a - c_b = m
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
        Vec3 d{0, 0, 0};
        d[a] = 1;
        d[b] = -1;
        std::vector<double> ts;
        for (const auto& v : cv.box().vertices()) ts.push_back(dot(d, v).get_d());
        double lo = *std::min_element(ts.begin(), ts.end()), hi = *std::max_element(ts.begin(), ts.end());
        for (long m = long(std::ceil(lo)); m <= long(std::floor(hi)); ++m) {
            Polygon w;
            w.add_range(d, Rational(m), Rational(m));
            auto vs = w.meet(cv.box()).vertices();
            if (vs.size() < 2) continue;
            XY p = project(vs[0]), q = project(vs[1]);
            cv.body << "<line x1=\"" << cv.sx(p) << "\" y1=\"" << cv.sy(p) << "\" x2=\"" << cv.sx(q) << "\" y2=\""
                    << cv.sy(q) << "\" stroke=\"#ccc\" stroke-width=\"0.5\"/>\n";
        }
    }
    cv.poly(r.strip(i, j), "fill=\"#1565c0\" fill-opacity=\"0.12\" stroke=\"#1565c0\"");
    for (const auto& k : r.pieces) {
        if (k.i0 != i || k.j0 != j || !k.member) continue;
        cv.poly(k.U, k.vertex ? "fill=\"#c62828\" fill-opacity=\"0.5\" stroke=\"#c62828\""
                              : "fill=\"#ef6c00\" fill-opacity=\"0.25\" stroke=\"#ef6c00\"");
    }
    for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        auto seg = tripod_segment(r.s.p, r.s.flags[i], r.s.flags[j], r.s.flags[k]);
        if (!seg) continue;
        cv.poly(seg->region.polygon(), "fill=\"none\" stroke=\"#000\" stroke-width=\"2\"");
        cv.dot(weights_in(r.s.tripod_point(i, j, k), F), "fill=\"#000\"");
    }
    std::ostringstream o;
    o << std::fixed << std::setprecision(2);
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cv.width() << "\" height=\"" << cv.height()
      << "\">\n<!-- flat F_" << i << "," << j << "; vertical lines are level sets of b_" << i << " -->\n"
      << cv.body.str() << "</svg>\n";
    return o.str();
}

std::string render_tree_svg(const MetricTree& t) {
    int nv = int(t.vertices.size());
    std::vector<std::vector<int>> adj(nv);
    for (size_t e = 0; e < t.edges.size(); ++e) {
        adj[t.edges[e].u].push_back(int(e));
        if (t.edges[e].v >= 0) adj[t.edges[e].v].push_back(int(e));
    }
    std::vector<XY> pos(nv, XY{0, 0});
    std::vector<char> seen(nv, 0);
    std::map<int, XY> ray_end;
    // depth-first layout with angular sectors
    auto place = [&](auto&& self, int v, double a0, double a1, int parent_edge) -> void {
        seen[v] = 1;
        std::vector<int> kids;
        for (int e : adj[v])
            if (e != parent_edge) kids.push_back(e);
        for (size_t k = 0; k < kids.size(); ++k) {
            double a = a0 + (a1 - a0) * (k + 0.5) / kids.size();
            double b0 = a0 + (a1 - a0) * k / kids.size(), b1 = a0 + (a1 - a0) * (k + 1) / kids.size();
            const TreeEdge& ed = t.edges[kids[k]];
            double len = ed.v >= 0 ? std::max(1.0, ed.len.get_d()) : 2.0;
            XY q{pos[v].x + len * std::cos(a), pos[v].y + len * std::sin(a)};
            if (ed.v < 0) {
                ray_end[kids[k]] = q;
                continue;
            }
            int w = ed.u == v ? ed.v : ed.u;
            if (seen[w]) continue;
            pos[w] = q;
            self(self, w, b0, b1, kids[k]);
        }
    };
    if (nv > 0) place(place, 0, 0, 2 * std::acos(-1.0), -1);
    double mx = 1;
    for (auto& p : pos) mx = std::max({mx, std::abs(p.x), std::abs(p.y)});
    for (auto& [e, p] : ray_end) mx = std::max({mx, std::abs(p.x), std::abs(p.y)});
    double s = 250 / mx;
    auto X = [&](const XY& p) { return 300 + p.x * s; };
    auto Y = [&](const XY& p) { return 300 - p.y * s; };
    std::ostringstream o;
    o << std::fixed << std::setprecision(2);
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\">\n";
    for (size_t e = 0; e < t.edges.size(); ++e) {
        const TreeEdge& ed = t.edges[e];
        XY a = pos[ed.u], b = ed.v >= 0 ? pos[ed.v] : ray_end[int(e)];
        o << "<line x1=\"" << X(a) << "\" y1=\"" << Y(a) << "\" x2=\"" << X(b) << "\" y2=\"" << Y(b)
          << "\" stroke=\"#000\"" << (ed.v < 0 ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
        if (ed.v < 0)
            o << "<text x=\"" << X(b) << "\" y=\"" << Y(b) << "\" font-size=\"12\">eta" << ed.end << "</text>\n";
        else
            o << "<text x=\"" << (X(a) + X(b)) / 2 << "\" y=\"" << (Y(a) + Y(b)) / 2 << "\" font-size=\"10\">"
              << to_string(ed.len) << "</text>\n";
    }
    for (int v = 0; v < nv; ++v)
        o << "<circle cx=\"" << X(pos[v]) << "\" cy=\"" << Y(pos[v]) << "\" r=\"4\" fill=\"#c62828\"/>\n";
    o << "</svg>\n";
    return o.str();
}

}  // namespace a2b
