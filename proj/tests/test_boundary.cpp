#include "checks.hpp"

#include <doctest.h>

#include <cmath>

using namespace a2b;
using a2b::test::random_point;

namespace {

const double kPi = std::acos(-1.0);

// b(x) - b(y) in true units, as a radical.
RadicalValue diff(const BusemannFunction& b, const NormPoint& x, const NormPoint& y) {
    int r = b.radicand();
    return {(b.scaled(x) - b.scaled(y)) / r, r};
}

bool lipschitz(const BusemannFunction& b, const NormPoint& x, const NormPoint& y) {
    RadicalValue d = diff(b, x, y);
    return compare_radical_vs_sqrt({abs(d.coeff), d.radicand}, distance2(x, y)) <= 0;
}

std::array<Flag, 2> opposite_pair(std::mt19937_64& rng) {
    auto t = random_opposite_triple(rng, 3);
    return {t[0], t[1]};
}

Vec3 random_chart(std::mt19937_64& rng, int h = 4) { return test::random_vec(rng, h, 2); }

}  // namespace

TEST_CASE("opposite flags and flats") {
    auto t = standard_triple();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(opposite(t[i], t[j]) == (i != j));
    Flag a = make_flag({1, 0, 0}, {0, 0, 1});
    CHECK_FALSE(opposite(a, make_flag({0, 1, 0}, {0, 0, 1})));
    CHECK(opposite(a, make_flag({0, 0, 1}, {1, 0, 0})));
    CHECK_THROWS(make_flag({1, 0, 0}, {1, 0, 0}));
}

TEST_CASE("boundary of a flat is a hexagon of singular points") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 50; ++k) {
        auto [fi, fj] = opposite_pair(rng);
        Flat F = flat(fi, fj);
        auto v = flat_vertices(F);
        CHECK(v[0] == nu(fi.line));
        CHECK(v[2] == nu(fj.line));
        CHECK(v[1] == eta_pair(fi, fj));
        CHECK(v[4] == xi_pair(fi, fj));
        for (int a = 0; a < 6; ++a) {
            CHECK(tits_angle_sixths(v[a], v[(a + 1) % 6]) == 2);
            CHECK(tits_angle_sixths(v[a], v[(a + 3) % 6]) == 6);
            auto d = chart_direction(F.frame, v[a]);
            REQUIRE(d);
            CHECK(traceless_norm2(*d) > 0);
        }
        CHECK(tits_angle_sixths(center_of(fi), center_of(fj)) == 6);
        CHECK(tits_angle_sixths(center_of(fi), v[0]) == 1);
    }
}

TEST_CASE("Busemann function decreases at unit speed along rays") {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 200; ++k) {
        long p = k % 2 ? 2 : 3;
        auto [fi, fj] = opposite_pair(rng);
        Flat F = flat(fi, fj);
        auto vs = flat_vertices(F);
        IdealPoint z = k % 3 == 0 ? center_of(fi) : vs[k % 6];
        Vec3 dir = *chart_direction(F.frame, z);
        Vec3 c = random_chart(rng);
        Rational s = random_rational(rng, 0, 5, 4);
        NormPoint x0 = chart_point(p, F.frame, c), x1 = chart_point(p, F.frame, add(c, scale(s, dir)));
        BusemannFunction b = busemann(z, random_point(p, rng));
        RadicalValue d = diff(b, x0, x1);
        CHECK(d.coeff >= 0);
        CHECK(compare_radical_vs_sqrt(d, s * s * traceless_norm2(dir)) == 0);
    }
}

TEST_CASE("Busemann functions are 1-Lipschitz and convex") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 300; ++k) {
        long p = std::array<long, 3>{2, 3, 5}[k % 3];
        auto [fi, fj] = opposite_pair(rng);
        IdealPoint z = std::array<IdealPoint, 3>{nu(fi.line), mu(fi.plane), center_of(fi)}[k % 3];
        NormPoint o = base_vertex(p);
        BusemannFunction b = busemann(z, o);
        CHECK(b.scaled(o) == 0);
        NormPoint x = random_point(p, rng), y = random_point(p, rng);
        CHECK(lipschitz(b, x, y));
        Rational t = random_rational(rng, 0, 1, 8);
        NormPoint g = geodesic_point(x, y, t);
        CHECK(b.scaled(g) <= (1 - t) * b.scaled(x) + t * b.scaled(y));
    }
}

TEST_CASE("opposite Busemann functions sum to a constant on the flat") {
    std::mt19937_64 rng(24);
    for (int k = 0; k < 40; ++k) {
        long p = k % 2 ? 2 : 5;
        auto [fi, fj] = opposite_pair(rng);
        Flat F = flat(fi, fj);
        auto vs = flat_vertices(F);
        std::vector<std::pair<IdealPoint, IdealPoint>> pairs;
        for (int a = 0; a < 3; ++a) pairs.push_back({vs[a], vs[a + 3]});
        pairs.push_back({center_of(fi), center_of(fj)});
        for (auto& [z1, z2] : pairs) {
            std::optional<Rational> c0;
            for (int m = 0; m < 10; ++m) {
                NormPoint x = chart_point(p, F.frame, random_chart(rng));
                Rational s = busemann_raw(z1, x) + busemann_raw(z2, x);
                if (!c0) c0 = s;
                CHECK(s == *c0);
            }
            // off the flat the sum only grows
            NormPoint y = random_point(p, rng);
            CHECK(busemann_raw(z1, y) + busemann_raw(z2, y) >= *c0);
        }
    }
}

TEST_CASE("Busemann functions agree near a common antipode") {
    std::mt19937_64 rng(25);
    auto t = test::equal_busemann_rays(rng, 200);
    CHECK(t.failures == 0);
    CHECK(t.tested > 250);
}

TEST_CASE("tube around the ray meets both horoballs alike") {
    std::mt19937_64 rng(26);
    auto t = test::tube_meets_horoballs(rng, 60);
    CHECK(t.failures == 0);
    CHECK(t.tested > 1000);
}

namespace {

struct Setting {
    long p;
    Flat F;
    std::array<IdealPoint, 6> v;  // nu1 eta12 nu2 mu2 xi12 mu1
    BusemannFunction b1;
};

double angle_to(const Setting& s, const Vec3& at, const NormPoint& x, const IdealPoint& z) {
    Vec3 d = *chart_direction(s.F.frame, z);
    NormPoint a = chart_point(s.p, s.F.frame, at), far = chart_point(s.p, s.F.frame, add(at, d));
    return angle(a, x, far).value;
}

Setting random_setting(std::mt19937_64& rng, long p) {
    auto t = random_opposite_triple(rng, 3);
    Flat F = flat(t[0], t[1]);
    return {p, F, flat_vertices(F), busemann(center_of(t[0]), base_vertex(p))};
}

}  // namespace

TEST_CASE("triangle lemmas have no counterexamples") {
    std::mt19937_64 rng(27);
    const double tol = 1e-9;
    long hits1 = 0, hits2 = 0, bad1 = 0, bad2 = 0;
    for (int k = 0; k < 3000; ++k) {
        long p = k % 2 ? 2 : 3;
        Setting s = random_setting(rng, p);
        Vec3 c1 = random_chart(rng, 3), c2 = random_chart(rng, 3);
        NormPoint p1 = chart_point(p, s.F.frame, c1), p2 = chart_point(p, s.F.frame, c2);
        if (points_equal(p1, p2)) continue;
        if (s.b1.scaled(p1) > s.b1.scaled(p2)) {
            std::swap(c1, c2);
            std::swap(p1, p2);
        }
        NormPoint x = k % 3 == 0 ? chart_point(p, s.F.frame, random_chart(rng, 6))
                                 : step_toward(k % 2 ? p1 : p2, random_point_near(p, rng, p1), 4.0);
        if (points_equal(x, p1) || points_equal(x, p2)) continue;
        double ah = std::uniform_real_distribution<double>(0, kPi / 3)(rng);
        double nu1 = angle_to(s, c1, x, s.v[0]), nu2 = angle_to(s, c2, x, s.v[2]);
        double e1 = angle_to(s, c1, x, s.v[1]), e2 = angle_to(s, c2, x, s.v[1]);
        if (nu1 < kPi / 3 + ah - tol && nu2 < kPi / 3 + ah - tol) {
            ++hits1;
            if (e1 > ah + tol && e2 > ah + tol) ++bad1;
        }
        // second lemma: needs angle at p2 between p1 and eta12 at least pi/3
        double ah2 = std::min(ah, kPi / 6);
        double at2 = angle(p2, p1, chart_point(p, s.F.frame, add(c2, *chart_direction(s.F.frame, s.v[1])))).value;
        if (at2 < kPi / 3 - tol) continue;
        double mu1 = angle_to(s, c1, x, s.v[5]), x1 = angle_to(s, c1, x, s.v[4]);
        if (mu1 < kPi / 3 + ah2 - tol && nu2 < kPi / 3 + ah2 - tol) {
            ++hits2;
            if (x1 > ah2 + tol && e2 > ah2 + tol) ++bad2;
        }
    }
    CHECK(bad1 == 0);
    CHECK(bad2 == 0);
    CHECK(hits1 > 20);
    MESSAGE("premises met: " << hits1 << " and " << hits2);
}

TEST_CASE("three maximal angles: the two-of-three set is cut by two horoballs near q") {
    std::mt19937_64 rng(28);
    for (long p : {2L, 3L}) {
        NormPoint o = base_vertex(p);
        std::array<BusemannFunction, 3> b{busemann(nu({1, 0, 0}), o), busemann(nu({0, 1, 0}), o),
                                          busemann(nu({0, 0, 1}), o)};
        Mat3 F = from_cols({1, 1, 1}, {0, 1, 0}, {0, 0, 1});
        Rational t = 2;
        NormPoint q = chart_point(p, F, scale(t, {2, -1, -1}));
        Rational R2 = distance2(o, q);
        REQUIRE(R2 == 6 * t * t);
        for (auto& bi : b) {
            CHECK(bi.scaled(q) == 3 * t);
            CHECK(angle(o, q, chart_point(p, identity3(), *chart_direction(identity3(), bi.zeta))).cls ==
                  AngleClass::TwoPiThird);
        }
        std::array<bool, 3> pair_ok{true, true, true};
        long inside = 0, outside = 0;
        for (int k = 0; k < 400; ++k) {
            double len = std::uniform_real_distribution<double>(0, 1.5 * t.get_d())(rng);
            NormPoint x = step_toward(q, random_point_near(p, rng, q, 3), len);
            if (4 * distance2(x, q) > 3 * R2) continue;
            std::array<bool, 3> low;
            for (int i = 0; i < 3; ++i) low[i] = b[i].scaled(x) <= 3 * t;
            bool inC = int(low[0]) + int(low[1]) + int(low[2]) >= 2;
            (inC ? inside : outside)++;
            for (int k2 = 0; k2 < 3; ++k2) {
                int i = k2, j = (k2 + 1) % 3;
                if (inC != (low[i] && low[j])) pair_ok[k2] = false;
            }
        }
        CHECK(inside + outside >= 100);
        CHECK(inside > 0);
        CHECK(outside > 0);
        CHECK((pair_ok[0] || pair_ok[1] || pair_ok[2]));
    }
}
