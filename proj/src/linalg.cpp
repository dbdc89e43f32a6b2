#include "a2b/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace a2b {

Mat3 identity3() { return diag3(1, 1, 1); }

Mat3 diag3(const Rational& a, const Rational& b, const Rational& c) {
    Mat3 m;
    for (auto& r : m) r.fill(Rational(0));
    m[0][0] = a;
    m[1][1] = b;
    m[2][2] = c;
    return m;
}

Mat3 mul(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    return r;
}

Vec3 mul(const Mat3& a, const Vec3& v) {
    Vec3 r;
    for (int i = 0; i < 3; ++i) r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
    return r;
}

Vec3 row_mul(const Vec3& row, const Mat3& a) {
    Vec3 r;
    for (int j = 0; j < 3; ++j) r[j] = row[0] * a[0][j] + row[1] * a[1][j] + row[2] * a[2][j];
    return r;
}

Rational det(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse(const Mat3& m) {
    Rational d = det(m);
    if (d == 0) throw std::domain_error("singular matrix");
    Mat3 r;
    r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
    r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
    r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
    r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
    r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
    r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
    r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
    r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
    r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
    return r;
}

Mat3 transpose(const Mat3& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
    return r;
}

Vec3 col(const Mat3& m, int j) { return {m[0][j], m[1][j], m[2][j]}; }

void set_col(Mat3& m, int j, const Vec3& v) {
    for (int i = 0; i < 3; ++i) m[i][j] = v[i];
}

Mat3 from_cols(const Vec3& a, const Vec3& b, const Vec3& c) {
    Mat3 m;
    set_col(m, 0, a);
    set_col(m, 1, b);
    set_col(m, 2, c);
    return m;
}

Rational dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 scale(const Rational& s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

bool is_zero(const Vec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

bool parallel(const Vec3& a, const Vec3& b) { return is_zero(cross(a, b)); }

Vec3 normalize_dir(const Vec3& v) {
    for (int i = 0; i < 3; ++i)
        if (v[i] != 0) return scale(Rational(1) / v[i], v);
    throw std::domain_error("zero vector");
}

Vec3 primitive(const Vec3& v) {
    Vec3 u = normalize_dir(v);
    BigInt l = 1;
    for (auto& x : u) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    BigInt g = 0;
    for (auto& x : u) {
        BigInt n = Rational(x * l).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    return scale(Rational(l) / Rational(g), u);
}

Rational sum(const Vec3& v) { return v[0] + v[1] + v[2]; }

Vec3 center(const Vec3& v) {
    Rational m = sum(v) / 3;
    return {v[0] - m, v[1] - m, v[2] - m};
}

Rational traceless_norm2(const Vec3& v) {
    Rational s = sum(v);
    return dot(v, v) - s * s / 3;
}

Rational traceless_dot(const Vec3& a, const Vec3& b) { return dot(a, b) - sum(a) * sum(b) / 3; }

std::array<long, 3> elementary_divisors(const Mat3& m0, long p) {
    require_prime(p);
    if (det(m0) == 0) throw std::domain_error("singular matrix");
    Mat3 m = m0;
    std::array<bool, 3> rdone{}, cdone{};
    std::array<long, 3> d{};
    for (int step = 0; step < 3; ++step) {
        int pi = -1, pj = -1;
        long best = 0;
        for (int i = 0; i < 3; ++i) {
            if (rdone[i]) continue;
            for (int j = 0; j < 3; ++j) {
                if (cdone[j] || m[i][j] == 0) continue;
                long v = val(m[i][j], p);
                if (pi < 0 || v < best) {
                    pi = i;
                    pj = j;
                    best = v;
                }
            }
        }
        d[step] = best;
        for (int i = 0; i < 3; ++i) {
            if (i == pi || rdone[i] || m[i][pj] == 0) continue;
            Rational f = m[i][pj] / m[pi][pj];
            for (int j = 0; j < 3; ++j) m[i][j] -= f * m[pi][j];
        }
        for (int j = 0; j < 3; ++j) {
            if (j == pj || cdone[j] || m[pi][j] == 0) continue;
            Rational f = m[pi][j] / m[pi][pj];
            for (int i = 0; i < 3; ++i) m[i][j] -= f * m[i][pj];
        }
        rdone[pi] = true;
        cdone[pj] = true;
    }
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace a2b
