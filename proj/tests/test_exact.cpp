#include "testutil.hpp"

#include <doctest.h>

#include <cmath>

using namespace a2b;

TEST_CASE("valuation examples") {
    CHECK(valuation(ratio(8, 3), 2) == ValInt{3, false});
    CHECK(valuation(Rational(0), 5).inf);
    CHECK(valuation(ratio(9, 2), 3) == ValInt{2, false});
    CHECK_THROWS_AS(valuation(Rational(3), 4), std::invalid_argument);
    CHECK((ValInt::infinity() + ValInt{3, false}).inf);
    CHECK(min(ValInt::infinity(), ValInt{-2, false}) == ValInt{-2, false});
}

TEST_CASE("valuation strips the p-part") {
    std::mt19937_64 rng(1);
    for (long p : {2L, 3L, 5L, 7L})
        for (int k = 0; k < 300; ++k) {
            Rational q = random_rational(rng, -500, 500, 1 + int(rng() % 60));
            if (q == 0) continue;
            Rational u = q / pow_p(p, val(q, p));
            CHECK(val(u, p) == 0);
        }
}

TEST_CASE("rationals are canonical and serialize as num/den") {
    Rational q = ratio(8, -12);
    CHECK(q.get_num() == -2);
    CHECK(q.get_den() == 3);
    CHECK(to_string(q) == "-2/3");
    CHECK(parse_rational("-2/3") == q);
    CHECK(parse_rational("6/4") == ratio(3, 2));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(ratio(1, 0));
}

namespace {

// Determinantal divisors: d1 = min val of entries, d1 + d2 = min val of 2x2 minors, sum = val det.
std::array<long, 3> divisors_by_minors(const Mat3& m, long p) {
    long v1 = 1L << 40, v2 = 1L << 40;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (m[i][j] != 0) v1 = std::min(v1, val(m[i][j], p));
    for (int r0 = 0; r0 < 3; ++r0)
        for (int r1 = r0 + 1; r1 < 3; ++r1)
            for (int c0 = 0; c0 < 3; ++c0)
                for (int c1 = c0 + 1; c1 < 3; ++c1) {
                    Rational mi = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
                    if (mi != 0) v2 = std::min(v2, val(mi, p));
                }
    long v3 = val(det(m), p);
    return {v1, v2 - v1, v3 - v2};
}

}  // namespace

TEST_CASE("elementary divisors") {
    for (long p : {2L, 3L, 5L}) {
        CHECK(elementary_divisors(diag3(1, p, p * p), p) == std::array<long, 3>{0, 1, 2});
        CHECK(elementary_divisors(identity3(), p) == std::array<long, 3>{0, 0, 0});
    }
    Mat3 z{};
    CHECK_THROWS(elementary_divisors(z, 2));

    std::mt19937_64 rng(2);
    for (int k = 0; k < 400; ++k) {
        long p = std::array<long, 3>{2, 3, 5}[k % 3];
        Mat3 m = test::random_int_matrix(rng, 9);
        CHECK(elementary_divisors(m, p) == divisors_by_minors(m, p));
    }
}

TEST_CASE("elementary divisors are invariant under local units") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 1000; ++k) {
        long p = std::array<long, 3>{2, 3, 5}[k % 3];
        Mat3 m = test::random_int_matrix(rng, 6);
        Mat3 u = test::random_local_unit(p, rng), v = test::random_local_unit(p, rng);
        CHECK(elementary_divisors(mul(mul(u, m), v), p) == elementary_divisors(m, p));
    }
}

TEST_CASE("compare_radical examples") {
    CHECK(compare_radical({1, 2}, {1, 3}) < 0);
    CHECK(compare_radical({2, 1}, {2, 1}) == 0);
    CHECK(compare_radical({ratio(3, 2), 2}, {1, 6}) < 0);
    CHECK(compare_radical({-1, 2}, {-1, 3}) > 0);
    CHECK(compare_radical({0, 6}, {0, 2}) == 0);
}

TEST_CASE("compare_radical_vs_sqrt examples") {
    CHECK(compare_radical_vs_sqrt({1, 2}, 2) == 0);
    CHECK(compare_radical_vs_sqrt({-1, 6}, 0) < 0);
    CHECK(compare_radical_vs_sqrt({2, 1}, 3) > 0);
    CHECK_THROWS(compare_radical_vs_sqrt({1, 1}, -1));
}

TEST_CASE("compare_radical agrees with floats") {
    std::mt19937_64 rng(4);
    const int rad[] = {1, 2, 3, 6};
    int compared = 0;
    for (int k = 0; k < 5000; ++k) {
        RadicalValue a{random_rational(rng, -20, 20, 7), rad[rng() % 4]};
        RadicalValue b{random_rational(rng, -20, 20, 7), rad[rng() % 4]};
        double d = a.to_double() - b.to_double();
        if (std::abs(d) <= 1e-9) continue;
        ++compared;
        CHECK(compare_radical(a, b) == (d < 0 ? -1 : 1));
        CHECK(compare_radical(b, a) == -compare_radical(a, b));
    }
    CHECK(compared > 4000);
}

TEST_CASE("compare_sqrt_sum") {
    CHECK(compare_sqrt_sum(1, 1, 4) == 0);
    CHECK(compare_sqrt_sum(1, 4, 9) == 0);
    CHECK(compare_sqrt_sum(2, 2, 7) > 0);
    CHECK(compare_sqrt_sum(1, 1, 5) < 0);
}
