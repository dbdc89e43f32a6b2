#include "a2b/building.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace a2b {

Mat3 normalize_frame(const Mat3& B, long p, Vec3* weight_shift) {
    Mat3 F = B;
    for (int j = 0; j < 3; ++j) {
        Vec3 c = col(B, j);
        Rational lead = 0;
        for (int i = 0; i < 3; ++i)
            if (c[i] != 0) {
                lead = c[i];
                break;
            }
        if (lead == 0) throw std::domain_error("singular frame");
        set_col(F, j, scale(Rational(1) / lead, c));
        // the column b/lead carries weight w - val(lead)
        if (weight_shift) (*weight_shift)[j] = Rational(-val(lead, p));
    }
    return F;
}

NormPoint norm_point(long p, const Mat3& B, const Vec3& c) {
    NormPoint x;
    x.p = p;
    Vec3 shift{};
    x.frame = normalize_frame(B, p, &shift);
    Rational d = det(x.frame);
    if (d == 0) throw std::domain_error("singular frame");
    x.w = center(add(c, shift));
    x.inv = inverse(x.frame);
    x.vdet = val(d, p);
    return x;
}

NormPoint vertex_of_lattice(long p, const Mat3& M) {
    require_prime(p);
    return norm_point(p, M, Vec3{0, 0, 0});
}

NormPoint base_vertex(long p) { return vertex_of_lattice(p, identity3()); }

Rational alpha(const NormPoint& x, const Vec3& v) {
    Vec3 a = mul(x.inv, v);
    bool have = false;
    Rational best;
    for (int i = 0; i < 3; ++i) {
        if (a[i] == 0) continue;
        Rational t = Rational(val(a[i], x.p)) + x.w[i];
        if (!have || t < best) {
            best = t;
            have = true;
        }
    }
    if (!have) throw std::domain_error("norm of zero vector");
    return best;
}

Rational alpha_dual(const NormPoint& x, const Vec3& phi) {
    Vec3 a = row_mul(phi, x.frame);
    bool have = false;
    Rational best;
    for (int i = 0; i < 3; ++i) {
        if (a[i] == 0) continue;
        Rational t = Rational(val(a[i], x.p)) - x.w[i];
        if (!have || t < best) {
            best = t;
            have = true;
        }
    }
    if (!have) throw std::domain_error("dual norm of zero covector");
    return best;
}

Rational volume(const NormPoint& x) { return sum(x.w) - x.vdet; }

CommonFrame common_frame(const NormPoint& x, const NormPoint& y) {
    if (x.p != y.p) throw std::invalid_argument("points over different primes");
    const long p = x.p;
    Mat3 T = mul(x.inv, y.frame);
    Mat3 B = x.frame;
    std::array<bool, 3> rdone{}, cdone{};
    for (int step = 0; step < 3; ++step) {
        int pi = -1, pj = -1;
        Rational best;
        for (int i = 0; i < 3; ++i) {
            if (rdone[i]) continue;
            for (int j = 0; j < 3; ++j) {
                if (cdone[j] || T[i][j] == 0) continue;
                Rational om = Rational(val(T[i][j], p)) + x.w[i] - y.w[j];
                if (pi < 0 || om < best) {
                    pi = i;
                    pj = j;
                    best = om;
                }
            }
        }
        if (pi < 0) throw std::logic_error("common_frame: degenerate transition");
        for (int j = 0; j < 3; ++j) {
            if (j == pj || cdone[j] || T[pi][j] == 0) continue;
            Rational s = T[pi][j] / T[pi][pj];
            for (int i = 0; i < 3; ++i) T[i][j] -= s * T[i][pj];
        }
        Vec3 bnew = col(B, pi);
        for (int i = 0; i < 3; ++i) {
            if (i == pi || rdone[i] || T[i][pj] == 0) continue;
            Rational t = T[i][pj] / T[pi][pj];
            bnew = add(bnew, scale(t, col(B, i)));
            T[i][pj] = 0;
        }
        set_col(B, pi, bnew);
        rdone[pi] = true;
        cdone[pj] = true;
    }
    CommonFrame out;
    out.cx = x.w;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            if (T[i][j] != 0) out.cy[i] = y.w[j] - val(T[i][j], p);
    Vec3 shift{};
    out.frame = normalize_frame(B, p, &shift);
    out.cx = add(out.cx, shift);
    out.cy = add(out.cy, shift);
    return out;
}

Rational distance2(const NormPoint& x, const NormPoint& y) {
    CommonFrame cf = common_frame(x, y);
    return traceless_norm2(sub(cf.cx, cf.cy));
}

bool points_equal(const NormPoint& x, const NormPoint& y) { return distance2(x, y) == 0; }

NormPoint geodesic_point(const NormPoint& x, const NormPoint& y, const Rational& t) {
    if (t < 0 || t > 1) throw std::invalid_argument("geodesic parameter outside [0,1]");
    CommonFrame cf = common_frame(x, y);
    Rational s = 1 - t;
    return norm_point(x.p, cf.frame, add(scale(s, cf.cx), scale(t, cf.cy)));
}

Vec3 weights_in(const NormPoint& x, const Mat3& F) {
    return {alpha(x, col(F, 0)), alpha(x, col(F, 1)), alpha(x, col(F, 2))};
}

bool in_apartment(const NormPoint& x, const Mat3& F) {
    Rational d = det(F);
    if (d == 0) throw std::domain_error("singular frame");
    Rational lhs = sum(weights_in(x, F));
    Rational rhs = Rational(val(d, x.p) - x.vdet) + sum(x.w);
    return lhs == rhs;
}

NormPoint chart_point(long p, const Mat3& F, const Vec3& c) { return norm_point(p, F, c); }

Rational cone_radius2(const Vec3& w) {
    Rational best = 1;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            Rational d = w[a] - w[b];
            Rational fr = d - floor_rational(d);
            if (fr == 0) continue;
            Rational dist = fr < Rational(1) - fr ? fr : Rational(1) - fr;
            if (dist < best) best = dist;
        }
    return best * best / 2;
}

double comparison_angle(const NormPoint& x, const NormPoint& y, const NormPoint& z) {
    Rational a2 = distance2(x, y), b2 = distance2(x, z), c2 = distance2(y, z);
    if (a2 == 0 || b2 == 0) throw std::invalid_argument("degenerate comparison angle");
    double c = Rational(a2 + b2 - c2).get_d() / (2.0 * std::sqrt(a2.get_d()) * std::sqrt(b2.get_d()));
    c = std::max(-1.0, std::min(1.0, c));
    return std::acos(c);
}

std::string to_string(AngleClass c) {
    switch (c) {
        case AngleClass::Zero: return "0";
        case AngleClass::PiSixth: return "pi/6";
        case AngleClass::PiThird: return "pi/3";
        case AngleClass::HalfPi: return "pi/2";
        case AngleClass::TwoPiThird: return "2pi/3";
        case AngleClass::FivePiSixth: return "5pi/6";
        case AngleClass::Pi: return "pi";
        default: return "other";
    }
}

AngleClass classify_cos(int sign, const Rational& cos2) {
    if (sign == 0) return AngleClass::HalfPi;
    if (cos2 == 1) return sign > 0 ? AngleClass::Zero : AngleClass::Pi;
    if (cos2 == Rational(3, 4)) return sign > 0 ? AngleClass::PiSixth : AngleClass::FivePiSixth;
    if (cos2 == Rational(1, 4)) return sign > 0 ? AngleClass::PiThird : AngleClass::TwoPiThird;
    return AngleClass::Other;
}

namespace {

struct Germ {
    Rational cos2;
    int sign = 0;
    Rational chord2;
};

Germ germ_at(const NormPoint& x, const NormPoint& y, const NormPoint& z, const Rational& t) {
    NormPoint yt = geodesic_point(x, y, t), zt = geodesic_point(x, z, t);
    Rational a2 = distance2(x, yt), b2 = distance2(x, zt), c2 = distance2(yt, zt);
    Rational num = a2 + b2 - c2;
    Germ g;
    g.sign = sgn(num);
    g.cos2 = num * num / (4 * a2 * b2);
    g.chord2 = c2;
    return g;
}

}  // namespace

Angle angle(const NormPoint& x, const NormPoint& y, const NormPoint& z) {
    Rational dy = distance2(x, y), dz = distance2(x, z);
    if (dy == 0 || dz == 0) throw std::invalid_argument("degenerate angle");
    Rational eps2 = cone_radius2(x.w);
    Rational far = dy > dz ? dy : dz;
    Rational t = 1;
    int k = 0;
    while (t * t * far >= eps2) {
        t /= 2;
        if (++k > 64) throw std::runtime_error("angle stabilization cap exceeded");
    }
    Germ g1 = germ_at(x, y, z, t);
    Germ g2 = germ_at(x, y, z, t / 2);
    while (g2.chord2 * 4 != g1.chord2) {
        t /= 2;
        if (++k > 64) throw std::runtime_error("angle stabilization cap exceeded");
        g1 = g2;
        g2 = germ_at(x, y, z, t / 2);
    }
    Angle a;
    a.cos2 = g1.cos2;
    a.cos_sign = g1.sign;
    a.halvings = k;
    a.cls = classify_cos(a.cos_sign, a.cos2);
    double c = std::sqrt(a.cos2.get_d()) * a.cos_sign;
    c = std::max(-1.0, std::min(1.0, c));
    a.value = std::acos(c);
    return a;
}

}  // namespace a2b
