#pragma once

#include "a2b/building.hpp"
#include "a2b/chart.hpp"

#include <optional>
#include <string>

namespace a2b {

// Chamber at infinity: line L inside plane P (P given as a covector).
struct Flag {
    Vec3 line;
    Vec3 plane;
};

Flag make_flag(const Vec3& line, const Vec3& plane);
// Flag spanned by v and the plane <v, w>.
Flag flag_from_vectors(const Vec3& v, const Vec3& w);
bool operator==(const Flag& a, const Flag& b);
Flag transform(const Mat3& g, const Flag& f);
bool opposite(const Flag& f, const Flag& g);

enum class IdealKind { Nu, Mu, Center };

struct IdealPoint {
    IdealKind kind = IdealKind::Center;
    Vec3 line;   // Nu, Center
    Vec3 plane;  // Mu, Center
};

IdealPoint nu(const Vec3& line);
IdealPoint mu(const Vec3& plane);
IdealPoint center_of(const Flag& f);
bool operator==(const IdealPoint& a, const IdealPoint& b);
std::string describe(const IdealPoint& z);

// Tits angle in multiples of pi/6 (0, 1, ..., 6).
std::optional<int> tits_angle_sixths(const IdealPoint& a, const IdealPoint& b);

// The apartment F_{i,j}; frame columns (L_i, P_i ∩ P_j, L_j), normalized.
struct Flat {
    Flag fi;
    Flag fj;
    Mat3 frame;
};

Flat flat(const Flag& fi, const Flag& fj);
// (nu_i, eta_ij, nu_j, mu_j, xi_ij, mu_i)
std::array<IdealPoint, 6> flat_vertices(const Flat& F);
IdealPoint eta_pair(const Flag& fi, const Flag& fj);  // plane L_i + L_j
IdealPoint xi_pair(const Flag& fi, const Flag& fj);   // line P_i ∩ P_j

// Direction of the ideal point in the chart of frame F (unnormalized), or nullopt if not in the boundary.
std::optional<Vec3> chart_direction(const Mat3& F, const IdealPoint& z);

// Radicand of the Busemann unit for the kind: 6 for Nu/Mu, 2 for Center.
int busemann_radicand(IdealKind k);
// Intrinsic Busemann value scaled by sqrt(radicand), up to an additive constant fixed per ideal point.
Rational busemann_raw(const IdealPoint& z, const NormPoint& x);
// Strong asymptote class coordinate at the chamber of f, scaled by sqrt(6).
Rational class_coordinate(const Flag& f, const NormPoint& x);

struct BusemannFunction {
    IdealPoint zeta;
    NormPoint o;
    Rational offset;

    Rational scaled(const NormPoint& x) const { return busemann_raw(zeta, x) - offset; }
    RadicalValue eval(const NormPoint& x) const;
    int radicand() const { return busemann_radicand(zeta.kind); }
};

BusemannFunction busemann(const IdealPoint& zeta, const NormPoint& o);
RadicalValue busemann_eval(const BusemannFunction& b, const NormPoint& x);

struct ConvexRegion {
    Mat3 frame;
    Alcoved region;
};

ConvexRegion intersect_flats(long p, const Flat& F1, const Flat& F2);
ConvexRegion intersect_frames(long p, const Mat3& F1, const Mat3& F2);

}  // namespace a2b
