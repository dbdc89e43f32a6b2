#pragma once

#include "a2b/exact.hpp"

#include <array>

namespace a2b {

using Vec3 = std::array<Rational, 3>;
// Row-major; frames store spanning vectors as columns.
using Mat3 = std::array<std::array<Rational, 3>, 3>;

Mat3 identity3();
Mat3 diag3(const Rational& a, const Rational& b, const Rational& c);
Mat3 mul(const Mat3& a, const Mat3& b);
Vec3 mul(const Mat3& a, const Vec3& v);
Vec3 row_mul(const Vec3& row, const Mat3& a);
Rational det(const Mat3& m);
Mat3 inverse(const Mat3& m);
Mat3 transpose(const Mat3& m);
Vec3 col(const Mat3& m, int j);
void set_col(Mat3& m, int j, const Vec3& v);
Mat3 from_cols(const Vec3& a, const Vec3& b, const Vec3& c);

Rational dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Vec3 add(const Vec3& a, const Vec3& b);
Vec3 sub(const Vec3& a, const Vec3& b);
Vec3 scale(const Rational& s, const Vec3& v);
bool is_zero(const Vec3& v);
bool parallel(const Vec3& a, const Vec3& b);
// Scales so that the first nonzero entry is 1.
Vec3 normalize_dir(const Vec3& v);
// Primitive integer vector on the same line, first nonzero entry positive.
Vec3 primitive(const Vec3& v);

Rational sum(const Vec3& v);
Vec3 center(const Vec3& v);
// Squared Euclidean norm of the traceless projection.
Rational traceless_norm2(const Vec3& v);
Rational traceless_dot(const Vec3& a, const Vec3& b);

}  // namespace a2b

namespace a2b {

// Smith-type reduction over the localization at p, minimal-valuation pivot.
std::array<long, 3> elementary_divisors(const Mat3& m, long p);

}  // namespace a2b
