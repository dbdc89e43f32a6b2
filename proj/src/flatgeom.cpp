#include "a2b/flatgeom.hpp"

#include <algorithm>
#include <stdexcept>

namespace a2b {

std::vector<Piece> apartment_pieces(long p, const Mat3& F, const Mat3& E) {
    Mat3 T = mul(inverse(F), E);
    std::array<std::array<std::optional<long>, 3>, 3> v;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (T[i][j] != 0) v[i][j] = val(T[i][j], p);
    std::array<int, 3> s{0, 1, 2};
    std::optional<long> best;
    do {
        if (!v[s[0]][0] || !v[s[1]][1] || !v[s[2]][2]) continue;
        long tot = *v[s[0]][0] + *v[s[1]][1] + *v[s[2]][2];
        if (!best || tot < *best) best = tot;
    } while (std::next_permutation(s.begin(), s.end()));
    std::vector<Piece> out;
    // cancellation in det T: no point is split by both frames
    if (!best || *best != val(det(T), p)) return out;
    s = {0, 1, 2};
    do {
        if (!v[s[0]][0] || !v[s[1]][1] || !v[s[2]][2]) continue;
        Alcoved r;
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) {
                if (i == s[j] || !v[i][j]) continue;
                r.bound(s[j], i, Rational(*v[i][j] - *v[s[j]][j]));
            }
        r.tighten();
        if (r.is_empty) continue;
        Piece pc;
        pc.region = r;
        pc.sigma = s;
        for (int j = 0; j < 3; ++j) pc.t[j] = *v[s[j]][j];
        out.push_back(pc);
    } while (std::next_permutation(s.begin(), s.end()));
    return out;
}

Alcoved apartment_region(long p, const Mat3& F, const Mat3& E) {
    Alcoved r = Alcoved::empty_region();
    for (const auto& pc : apartment_pieces(p, F, E)) r = r.hull(pc.region);
    r.tighten();
    return r;
}

namespace {

struct Eval {
    bool found = false;
    Rational d2;
    Vec3 c;
    Alcoved hull = Alcoved::empty_region();
};

Eval evaluate(const NormPoint& q, const Mat3& F, const Polygon& U, const Vec3& y) {
    NormPoint yp = chart_point(q.p, F, y);
    CommonFrame cf = common_frame(q, yp);
    Eval e;
    for (const auto& pc : apartment_pieces(q.p, F, cf.frame)) {
        e.hull = e.hull.hull(pc.region);
        Vec3 z;
        for (int j = 0; j < 3; ++j) z[pc.sigma[j]] = cf.cx[j] - pc.t[j];
        auto n = nearest(pc.region.polygon().meet(U), z);
        if (!n) continue;
        if (!e.found || n->d2 < e.d2) {
            e.found = true;
            e.d2 = n->d2;
            e.c = n->c;
        }
    }
    return e;
}

Rational wall_gap(const Vec3& w) {
    Rational best = 1;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            Rational d = w[a] - w[b];
            Rational fr = d - floor_rational(d);
            if (fr == 0) continue;
            Rational g = fr < Rational(1) - fr ? fr : Rational(1) - fr;
            if (g < best) best = g;
        }
    return best;
}

const std::array<Vec3, 12>& probe_directions() {
    static const std::array<Vec3, 12> dirs = {
        Vec3{1, 0, -1}, Vec3{-1, 0, 1}, Vec3{1, -1, 0}, Vec3{-1, 1, 0}, Vec3{0, 1, -1}, Vec3{0, -1, 1},
        Vec3{2, -1, -1}, Vec3{-2, 1, 1}, Vec3{-1, 2, -1}, Vec3{1, -2, 1}, Vec3{-1, -1, 2}, Vec3{1, 1, -2}};
    return dirs;
}

}  // namespace

ChartDistance dist2_to_chart_polygon(const NormPoint& q, const Mat3& F, const Polygon& U) {
    ChartDistance out;
    if (in_apartment(q, F)) {
        auto n = nearest(U, weights_in(q, F));
        if (!n) throw std::invalid_argument("distance to empty polygon");
        out.d2 = n->d2;
        out.c = n->c;
        out.evaluations = 1;
        return out;
    }
    auto start = U.some_point();
    if (!start) throw std::invalid_argument("distance to empty polygon");
    Vec3 y = *start;
    for (int iter = 0; iter < 200; ++iter) {
        Eval e = evaluate(q, F, U, y);
        ++out.evaluations;
        if (!e.found) throw std::logic_error("chart distance: point outside its own apartment");
        if (e.hull.interior(e.c)) {
            out.d2 = e.d2;
            out.c = e.c;
            return out;
        }
        Rational step = wall_gap(e.c) / 4;
        bool improved = false;
        for (const auto& d : probe_directions()) {
            Eval f = evaluate(q, F, U, add(e.c, scale(step, d)));
            ++out.evaluations;
            if (f.found && f.d2 < e.d2) {
                y = f.c;
                improved = true;
                break;
            }
        }
        if (!improved) {
            out.d2 = e.d2;
            out.c = e.c;
            return out;
        }
    }
    throw std::runtime_error("chart distance did not converge");
}

}  // namespace a2b
