#include "a2b/boundary.hpp"

#include "a2b/flatgeom.hpp"

#include <sstream>
#include <stdexcept>

namespace a2b {

Flag make_flag(const Vec3& line, const Vec3& plane) {
    if (is_zero(line) || is_zero(plane)) throw std::invalid_argument("degenerate flag");
    if (dot(line, plane) != 0) throw std::invalid_argument("flag line not inside plane");
    return Flag{normalize_dir(line), normalize_dir(plane)};
}

Flag flag_from_vectors(const Vec3& v, const Vec3& w) { return make_flag(v, cross(v, w)); }

bool operator==(const Flag& a, const Flag& b) { return a.line == b.line && a.plane == b.plane; }

Flag transform(const Mat3& g, const Flag& f) { return make_flag(mul(g, f.line), row_mul(f.plane, inverse(g))); }

bool opposite(const Flag& f, const Flag& g) {
    Vec3 x = cross(f.plane, g.plane);
    if (is_zero(x)) return false;
    return det(from_cols(f.line, x, g.line)) != 0;
}

IdealPoint nu(const Vec3& line) { return IdealPoint{IdealKind::Nu, normalize_dir(line), Vec3{0, 0, 0}}; }
IdealPoint mu(const Vec3& plane) { return IdealPoint{IdealKind::Mu, Vec3{0, 0, 0}, normalize_dir(plane)}; }
IdealPoint center_of(const Flag& f) { return IdealPoint{IdealKind::Center, f.line, f.plane}; }

bool operator==(const IdealPoint& a, const IdealPoint& b) {
    return a.kind == b.kind && a.line == b.line && a.plane == b.plane;
}

std::string describe(const IdealPoint& z) {
    auto vec = [](const Vec3& v) {
        std::ostringstream s;
        s << "(" << v[0].get_str() << "," << v[1].get_str() << "," << v[2].get_str() << ")";
        return s.str();
    };
    switch (z.kind) {
        case IdealKind::Nu: return "line" + vec(z.line);
        case IdealKind::Mu: return "plane" + vec(z.plane);
        default: return "flag" + vec(z.line) + "<" + vec(z.plane);
    }
}

std::optional<int> tits_angle_sixths(const IdealPoint& a, const IdealPoint& b) {
    using K = IdealKind;
    if (a.kind == K::Nu && b.kind == K::Nu) return a.line == b.line ? 0 : 4;
    if (a.kind == K::Mu && b.kind == K::Mu) return a.plane == b.plane ? 0 : 4;
    if (a.kind == K::Nu && b.kind == K::Mu) return dot(b.plane, a.line) == 0 ? 2 : 6;
    if (a.kind == K::Mu && b.kind == K::Nu) return tits_angle_sixths(b, a);
    if (a.kind == K::Center && b.kind == K::Center) {
        bool sl = a.line == b.line, sp = a.plane == b.plane;
        if (sl && sp) return 0;
        if (sl || sp) return 2;
        if (dot(b.plane, a.line) == 0 || dot(a.plane, b.line) == 0) return 4;
        return 6;
    }
    if (a.kind == K::Center) return tits_angle_sixths(b, a);
    if (a.kind == K::Nu) {
        if (a.line == b.line) return 1;
        return dot(b.plane, a.line) == 0 ? 3 : 5;
    }
    if (a.kind == K::Mu) {
        if (a.plane == b.plane) return 1;
        return dot(a.plane, b.line) == 0 ? 3 : 5;
    }
    return std::nullopt;
}

Flat flat(const Flag& fi, const Flag& fj) {
    if (!opposite(fi, fj)) throw std::invalid_argument("flags are not opposite");
    Flat F;
    F.fi = fi;
    F.fj = fj;
    F.frame = normalize_frame(from_cols(fi.line, cross(fi.plane, fj.plane), fj.line), 2);
    return F;
}

IdealPoint eta_pair(const Flag& fi, const Flag& fj) { return mu(cross(fi.line, fj.line)); }
IdealPoint xi_pair(const Flag& fi, const Flag& fj) { return nu(cross(fi.plane, fj.plane)); }

std::array<IdealPoint, 6> flat_vertices(const Flat& F) {
    return {nu(F.fi.line), eta_pair(F.fi, F.fj), nu(F.fj.line), mu(F.fj.plane), xi_pair(F.fi, F.fj), mu(F.fi.plane)};
}

namespace {

std::optional<int> line_index(const Mat3& F, const Vec3& l) {
    for (int a = 0; a < 3; ++a)
        if (parallel(col(F, a), l)) return a;
    return std::nullopt;
}

std::optional<int> plane_complement(const Mat3& F, const Vec3& phi) {
    int zeros = 0, other = -1;
    for (int a = 0; a < 3; ++a) {
        if (dot(phi, col(F, a)) == 0)
            ++zeros;
        else
            other = a;
    }
    if (zeros != 2) return std::nullopt;
    return other;
}

}  // namespace

std::optional<Vec3> chart_direction(const Mat3& F, const IdealPoint& z) {
    Vec3 d{0, 0, 0};
    if (z.kind == IdealKind::Nu) {
        auto a = line_index(F, z.line);
        if (!a) return std::nullopt;
        d = {-1, -1, -1};
        d[*a] = 2;
        return d;
    }
    if (z.kind == IdealKind::Mu) {
        auto c = plane_complement(F, z.plane);
        if (!c) return std::nullopt;
        d = {1, 1, 1};
        d[*c] = -2;
        return d;
    }
    auto a = line_index(F, z.line);
    auto c = plane_complement(F, z.plane);
    if (!a || !c || *a == *c) return std::nullopt;
    d[*a] = 1;
    d[*c] = -1;
    return d;
}

int busemann_radicand(IdealKind k) { return k == IdealKind::Center ? 2 : 6; }

namespace {

Rational raw_line(const Vec3& v, const NormPoint& x) { return volume(x) - 3 * alpha(x, v); }
Rational raw_plane(const Vec3& phi, const NormPoint& x) { return -3 * alpha_dual(x, phi) - volume(x); }

}  // namespace

Rational busemann_raw(const IdealPoint& z, const NormPoint& x) {
    switch (z.kind) {
        case IdealKind::Nu: return raw_line(z.line, x);
        case IdealKind::Mu: return raw_plane(z.plane, x);
        default: return (raw_line(z.line, x) + raw_plane(z.plane, x)) / 3;
    }
}

Rational class_coordinate(const Flag& f, const NormPoint& x) { return raw_line(f.line, x) - raw_plane(f.plane, x); }

RadicalValue BusemannFunction::eval(const NormPoint& x) const {
    int m = radicand();
    return RadicalValue{scaled(x) / m, m};
}

BusemannFunction busemann(const IdealPoint& zeta, const NormPoint& o) {
    return BusemannFunction{zeta, o, busemann_raw(zeta, o)};
}

RadicalValue busemann_eval(const BusemannFunction& b, const NormPoint& x) { return b.eval(x); }

ConvexRegion intersect_frames(long p, const Mat3& F1, const Mat3& F2) {
    return ConvexRegion{F1, apartment_region(p, F1, F2)};
}

ConvexRegion intersect_flats(long p, const Flat& F1, const Flat& F2) { return intersect_frames(p, F1.frame, F2.frame); }

}  // namespace a2b
