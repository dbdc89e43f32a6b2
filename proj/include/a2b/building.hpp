#pragma once

#include "a2b/linalg.hpp"

#include <optional>
#include <string>

namespace a2b {

// Point of the building: the additive norm v -> min_i(val(a_i) + w_i) for v = sum a_i f_i.
// Frame columns are normalized (first nonzero entry 1); weights have mean 0.
struct NormPoint {
    long p = 2;
    Mat3 frame;
    Vec3 w;
    Mat3 inv;
    long vdet = 0;
};

// Normalizes the columns of B and returns the weight shift each column needs.
Mat3 normalize_frame(const Mat3& B, long p, Vec3* weight_shift = nullptr);

NormPoint norm_point(long p, const Mat3& B, const Vec3& c);
NormPoint vertex_of_lattice(long p, const Mat3& M);
NormPoint base_vertex(long p);

Rational alpha(const NormPoint& x, const Vec3& v);
// Dual norm on covectors: min_i(val(phi(f_i)) - w_i).
Rational alpha_dual(const NormPoint& x, const Vec3& phi);
// Intrinsic sum(w) - val(det frame).
Rational volume(const NormPoint& x);

struct CommonFrame {
    Mat3 frame;
    Vec3 cx;
    Vec3 cy;
};

CommonFrame common_frame(const NormPoint& x, const NormPoint& y);
Rational distance2(const NormPoint& x, const NormPoint& y);
bool points_equal(const NormPoint& x, const NormPoint& y);
NormPoint geodesic_point(const NormPoint& x, const NormPoint& y, const Rational& t);

bool in_apartment(const NormPoint& x, const Mat3& F);
// Weights alpha(f_j); they describe x in the chart of F when in_apartment holds.
Vec3 weights_in(const NormPoint& x, const Mat3& F);
// Point of the apartment F (normalized columns) with chart weights c.
NormPoint chart_point(long p, const Mat3& F, const Vec3& c);

// Squared distance to the nearest wall not through x; positive.
Rational cone_radius2(const Vec3& w);

double comparison_angle(const NormPoint& x, const NormPoint& y, const NormPoint& z);

enum class AngleClass { Zero, PiSixth, PiThird, HalfPi, TwoPiThird, FivePiSixth, Pi, Other };
std::string to_string(AngleClass c);

struct Angle {
    double value = 0;
    AngleClass cls = AngleClass::Other;
    Rational cos2;
    int cos_sign = 0;
    int halvings = 0;
};

Angle angle(const NormPoint& x, const NormPoint& y, const NormPoint& z);
AngleClass classify_cos(int sign, const Rational& cos2);

}  // namespace a2b
