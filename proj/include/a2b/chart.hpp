#pragma once

#include "a2b/linalg.hpp"

#include <optional>
#include <random>
#include <vector>

namespace a2b {

// a . c <= b on chart weights; a is kept traceless so the constraint ignores additive constants.
struct HalfPlane {
    Vec3 a;
    Rational b;
};

struct Polygon {
    std::vector<HalfPlane> hs;

    void add(const Vec3& a, const Rational& b);
    // lo <= a . c <= hi
    void add_range(const Vec3& a, const std::optional<Rational>& lo, const std::optional<Rational>& hi);
    bool contains(const Vec3& c) const;
    bool interior(const Vec3& c) const;
    Polygon meet(const Polygon& o) const;
    std::vector<Vec3> vertices() const;
    std::optional<Vec3> some_point() const;
    bool empty() const { return !some_point(); }
};

struct Nearest {
    Rational d2;
    Vec3 c;
};

// Nearest point of the polygon to z in the traceless metric; nullopt if empty.
std::optional<Nearest> nearest(const Polygon& poly, const Vec3& z);

// Region { c : c_a - c_b <= k[a][b] } with missing bounds meaning +inf.
struct Alcoved {
    std::array<std::array<std::optional<Rational>, 3>, 3> k;
    bool is_empty = false;

    static Alcoved whole();
    static Alcoved empty_region();
    void bound(int a, int b, const Rational& v);
    void tighten();
    Alcoved meet(const Alcoved& o) const;
    // Smallest alcoved region containing both.
    Alcoved hull(const Alcoved& o) const;
    bool contains(const Vec3& c) const;
    bool interior(const Vec3& c) const;
    Polygon polygon() const;
    std::optional<Vec3> some_point() const;
};

// Random point of the region near its nearest point to the origin; coordinates with denominator den.
std::optional<Vec3> sample_alcoved(const Alcoved& r, std::mt19937_64& rng, int radius, int den = 4);
Rational random_rational(std::mt19937_64& rng, int lo, int hi, int den);

}  // namespace a2b
