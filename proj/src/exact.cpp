#include "a2b/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace a2b {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_prime(long p) {
    if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

long val(const BigInt& z, long p) {
    if (z == 0) throw std::domain_error("valuation of zero");
    if (p == 2) return static_cast<long>(mpz_scan1(z.get_mpz_t(), 0));
    BigInt rest;
    BigInt pp(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t()));
}

long val(const Rational& q, long p) {
    if (q == 0) throw std::domain_error("valuation of zero");
    return val(q.get_num(), p) - val(q.get_den(), p);
}

ValInt valuation(const Rational& q, long p) {
    require_prime(p);
    if (q == 0) return ValInt::infinity();
    return {val(q, p), false};
}

Rational pow_p(long p, long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rational(r);
    Rational q(BigInt(1), r);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

Rational from_double(double x, long den_bits) {
    double scaled = std::floor(std::ldexp(x, static_cast<int>(den_bits)));
    BigInt num;
    mpz_set_d(num.get_mpz_t(), scaled);
    Rational q(num, BigInt(1));
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(den_bits));
    q.canonicalize();
    return q;
}

Rational floor_rational(const Rational& q) {
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

double RadicalValue::to_double() const { return coeff.get_d() * std::sqrt(static_cast<double>(radicand)); }

namespace {

// Compare s1*sqrt(x) with s2*sqrt(y), x, y >= 0 given by squares.
int compare_signed_squares(int s1, const Rational& x2, int s2, const Rational& y2) {
    if (s1 == 0 || x2 == 0) s1 = 0;
    if (s2 == 0 || y2 == 0) s2 = 0;
    if (s1 != s2) return s1 < s2 ? -1 : 1;
    if (s1 == 0) return 0;
    int c = cmp(x2, y2);
    c = c < 0 ? -1 : (c > 0 ? 1 : 0);
    return s1 > 0 ? c : -c;
}

}  // namespace

int compare_radical(const RadicalValue& a, const RadicalValue& b) {
    Rational a2 = a.coeff * a.coeff * a.radicand;
    Rational b2 = b.coeff * b.coeff * b.radicand;
    return compare_signed_squares(sgn(a.coeff), a2, sgn(b.coeff), b2);
}

int compare_radical_vs_sqrt(const RadicalValue& a, const Rational& r) {
    if (r < 0) throw std::invalid_argument("negative squared length");
    Rational a2 = a.coeff * a.coeff * a.radicand;
    return compare_signed_squares(sgn(a.coeff), a2, 1, r);
}

int compare_sqrt_sum(const Rational& a, const Rational& b, const Rational& c) {
    // sqrt(a)+sqrt(b) vs sqrt(c): square both sides, then isolate 2 sqrt(ab).
    Rational lhs = a + b;
    if (lhs >= c) {
        if (lhs > c) return 1;
        return (a == 0 || b == 0) ? 0 : 1;
    }
    Rational rhs = c - a - b;
    int k = cmp(Rational(4 * a * b), Rational(rhs * rhs));
    return k < 0 ? -1 : (k > 0 ? 1 : 0);
}

Rational ratio(long n, long d) {
    if (d == 0) throw std::domain_error("zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace a2b
