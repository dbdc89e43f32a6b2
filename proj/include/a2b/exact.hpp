#pragma once

#include <gmpxx.h>

#include <array>
#include <string>

namespace a2b {

using BigInt = mpz_class;
using Rational = mpq_class;

// Valuation codomain: integers plus +inf (the valuation of zero).
struct ValInt {
    long v = 0;
    bool inf = false;

    static ValInt infinity() { return {0, true}; }
    ValInt operator+(const ValInt& o) const {
        if (inf || o.inf) return infinity();
        return {v + o.v, false};
    }
    bool operator==(const ValInt& o) const { return inf == o.inf && (inf || v == o.v); }
    bool operator<(const ValInt& o) const {
        if (inf) return false;
        if (o.inf) return true;
        return v < o.v;
    }
};

inline ValInt min(const ValInt& a, const ValInt& b) { return b < a ? b : a; }

bool is_prime(long p);
void require_prime(long p);

ValInt valuation(const Rational& q, long p);
// Valuation of a nonzero rational; throws on zero.
long val(const Rational& q, long p);
long val(const BigInt& z, long p);
Rational pow_p(long p, long e);
// Canonicalized n/d.
Rational ratio(long n, long d);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);
Rational from_double(double x, long den_bits = 30);
Rational floor_rational(const Rational& q);
Rational abs(const Rational& q);

// Single-term radical value coeff * sqrt(radicand).
struct RadicalValue {
    Rational coeff;
    int radicand = 1;
    double to_double() const;
};

int compare_radical(const RadicalValue& a, const RadicalValue& b);
// Compares a with sqrt(r); r is a squared length.
int compare_radical_vs_sqrt(const RadicalValue& a, const Rational& r);
// Sign of sqrt(a) + sqrt(b) - sqrt(c) for a, b, c >= 0.
int compare_sqrt_sum(const Rational& a, const Rational& b, const Rational& c);

}  // namespace a2b
