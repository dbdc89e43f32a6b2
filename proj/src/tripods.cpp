#include "a2b/tripods.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace a2b {

namespace {

Rational center_raw(const Flag& f, const NormPoint& x) { return busemann_raw(center_of(f), x); }

Rational pair_sum(const Flag& a, const Flag& b, const NormPoint& x) { return center_raw(a, x) + center_raw(b, x); }

NormPoint flat_base(long p, const Flat& F) { return chart_point(p, F.frame, Vec3{0, 0, 0}); }

// Region of F ∩ E_1 ∩ ... in the chart of F.
Alcoved region_in(long p, const Mat3& F, const std::vector<Mat3>& others) {
    Alcoved r = Alcoved::whole();
    for (const auto& E : others) r = r.meet(apartment_region(p, F, E));
    return r;
}

bool vertical(const Alcoved& r) { return r.k[2][0] && r.k[0][2] && *r.k[2][0] == -*r.k[0][2]; }

}  // namespace

Rational transport_constant(long p, const Flag& a, const Flag& b) {
    Flat F = flat(a, b);
    NormPoint x = flat_base(p, F);
    return class_coordinate(a, x) - class_coordinate(b, x);
}

Rational shift(long p, const Flag& e1, const Flag& e2, const Flag& e3) {
    return -(transport_constant(p, e1, e2) + transport_constant(p, e2, e3) + transport_constant(p, e3, e1));
}

RadicalValue shift_value(long p, const Flag& e1, const Flag& e2, const Flag& e3) {
    return RadicalValue{shift(p, e1, e2, e3) / 6, 6};
}

bool is_tripod_point(const NormPoint& x, const Flag& a, const Flag& b, const Flag& c) {
    const Flag* fs[3] = {&a, &b, &c};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Flat F = flat(*fs[i], *fs[j]);
            if (pair_sum(*fs[i], *fs[j], x) != pair_sum(*fs[i], *fs[j], flat_base(x.p, F))) return false;
        }
    return true;
}

std::optional<TripodSegment> tripod_segment(long p, const Flag& e1, const Flag& e2, const Flag& e3) {
    Flat f12 = flat(e1, e2);
    Flat f13 = flat(e1, e3);
    Flat f23 = flat(e2, e3);
    Alcoved l = region_in(p, f12.frame, {f13.frame, f23.frame});
    if (l.is_empty) return std::nullopt;
    if (!vertical(l)) throw std::logic_error("tripod set is not vertical");
    TripodSegment seg;
    seg.f12 = f12;
    seg.region = l;
    Rational h = *l.k[2][0];
    // b_12 grows with c2 - c1 along the vertical
    if (l.k[0][1]) seg.lower = Vec3{0, -*l.k[0][1], h};
    if (l.k[1][0]) seg.upper = Vec3{0, *l.k[1][0], h};
    return seg;
}

TripodResult find_tripod(long p, const Flag& e1, const Flag& e2, const Flag& e3) {
    TripodResult out;
    out.shift = shift(p, e1, e2, e3);
    Flat f12 = flat(e1, e2);
    Alcoved S = apartment_region(p, f12.frame, flat(e1, e3).frame);
    if (S.is_empty || !S.k[2][0]) return out;
    auto seg = tripod_segment(p, e1, e2, e3);
    if (!seg) return out;
    Vec3 c;
    if (seg->lower)
        c = *seg->lower;
    else if (seg->upper)
        c = *seg->upper;
    else
        c = Vec3{0, 0, *seg->region.k[2][0]};
    // b_1 is maximal on S exactly on the face c3 - c1 = k20
    if (c[2] - c[0] != *S.k[2][0]) return out;
    NormPoint x = chart_point(p, f12.frame, c);
    if (!is_tripod_point(x, e1, e2, e3)) return out;
    out.tripod = Tripod{{e1, e2, e3}, f12, c, x};
    return out;
}

SSetVerdict is_sset(long p, const std::vector<Flag>& flags) {
    if (flags.size() < 3) throw std::invalid_argument("an S-set needs at least three flags");
    SSetVerdict v;
    int n = int(flags.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!opposite(flags[i], flags[j])) {
                v.ok = false;
                v.certificate = "pair " + std::to_string(i) + "," + std::to_string(j) + " not opposite";
                v.witness = {i, j};
                return v;
            }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Rational s = shift(p, flags[i], flags[j], flags[k]);
                if (s != 0) {
                    v.ok = false;
                    v.certificate = "triple " + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                                    " has shift " + to_string(s) + "/sqrt6";
                    v.witness = {i, j, k};
                    v.shift = s;
                    return v;
                }
            }
    return v;
}

namespace {

struct Interval {
    std::optional<Rational> lo, hi;
};

Interval vertical_range(const Alcoved& l) {
    Interval r;
    if (l.k[0][1]) r.lo = -*l.k[0][1];
    if (l.k[1][0]) r.hi = *l.k[1][0];
    return r;
}

Rational clamp(const Rational& x, const Interval& iv) {
    if (iv.lo && x < *iv.lo) return *iv.lo;
    if (iv.hi && x > *iv.hi) return *iv.hi;
    return x;
}

// Closest pair between two vertical segments of the chart, parametrized by s = c2 - c1.
std::pair<Vec3, Vec3> closest_vertical(const Alcoved& a, const Alcoved& b) {
    Interval ia = vertical_range(a), ib = vertical_range(b);
    Rational ha = *a.k[2][0], hb = *b.k[2][0];
    Rational dh = ha - hb;
    // |(0, ds, dh)|^2 traceless is minimized at ds = dh / 2
    Interval ds;
    if (ia.lo && ib.hi) ds.lo = *ia.lo - *ib.hi;
    if (ia.hi && ib.lo) ds.hi = *ia.hi - *ib.lo;
    Rational d = clamp(dh / 2, ds);
    // pick sb in ib with sb + d in ia
    Interval shifted = ib;
    if (ia.lo) shifted.lo = shifted.lo ? std::max(*shifted.lo, Rational(*ia.lo - d)) : Rational(*ia.lo - d);
    if (ia.hi) shifted.hi = shifted.hi ? std::min(*shifted.hi, Rational(*ia.hi - d)) : Rational(*ia.hi - d);
    Rational sb = shifted.lo ? *shifted.lo : (shifted.hi ? *shifted.hi : Rational(0));
    return {Vec3{0, sb + d, ha}, Vec3{0, sb, hb}};
}

}  // namespace

FourPointStructure four_point_structure(long p, const std::vector<Flag>& flags) {
    if (flags.size() != 4) throw std::invalid_argument("four flags expected");
    auto verdict = is_sset(p, flags);
    if (!verdict.ok) throw std::invalid_argument("not an S-set: " + verdict.certificate);
    FourPointStructure fs;
    std::array<int, 3> rest{1, 2, 3};
    std::optional<std::array<int, 4>> chosen;
    do {
        const Flag &e1 = flags[0], &e2 = flags[rest[0]], &e3 = flags[rest[1]], &e4 = flags[rest[2]];
        auto t3 = find_tripod(p, e1, e2, e3);
        auto t4 = find_tripod(p, e1, e2, e4);
        if (!t3.tripod || !t4.tripod) throw std::logic_error("S-set triple without tripod");
        if (center_raw(e1, t3.tripod->point) < center_raw(e1, t4.tripod->point)) {
            chosen = std::array<int, 4>{0, rest[0], rest[1], rest[2]};
            break;
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    if (!chosen) chosen = std::array<int, 4>{0, 1, 2, 3};
    fs.numbering = *chosen;
    const Flag &e1 = flags[fs.numbering[0]], &e2 = flags[fs.numbering[1]], &e3 = flags[fs.numbering[2]],
               &e4 = flags[fs.numbering[3]];
    fs.f12 = flat(e1, e2);
    const Mat3& F = fs.f12.frame;
    Mat3 f13 = flat(e1, e3).frame, f14 = flat(e1, e4).frame, f23 = flat(e2, e3).frame, f24 = flat(e2, e4).frame,
         f34 = flat(e3, e4).frame;
    Alcoved l123 = region_in(p, F, {f13, f23});
    Alcoved l124 = region_in(p, F, {f14, f24});
    if (l123.is_empty || l124.is_empty) throw std::logic_error("missing tripod segment");
    if (center_raw(e1, chart_point(p, F, *l123.some_point())) ==
        center_raw(e1, chart_point(p, F, *l124.some_point()))) {
        Alcoved common = region_in(p, F, {f13, f14, f23, f24, f34});
        if (common.is_empty) throw std::logic_error("no 4-pod although all tripod levels agree");
        fs.four_pod = true;
        fs.cp = fs.cq = *common.some_point();
    } else {
        auto pr = closest_vertical(l123, l124);
        fs.cp = pr.first;
        fs.cq = pr.second;
    }
    fs.p = chart_point(p, F, fs.cp);
    fs.q = chart_point(p, F, fs.cq);
    fs.tripods_ok = is_tripod_point(fs.p, e1, e2, e3) && is_tripod_point(fs.p, e1, e3, e4) &&
                    is_tripod_point(fs.q, e1, e2, e4) && is_tripod_point(fs.q, e2, e3, e4);
    fs.segment_in_flats = true;
    for (int k = 0; k <= 16; ++k) {
        Rational t = ratio(k, 16);
        NormPoint x = chart_point(p, F, add(scale(1 - t, fs.cp), scale(t, fs.cq)));
        if (!in_apartment(x, f23) || !in_apartment(x, f34) || !in_apartment(x, f14)) fs.segment_in_flats = false;
    }
    Vec3 d = sub(fs.cq, fs.cp);
    if (!is_zero(center(d))) {
        Vec3 up{1, -2, 1};
        Rational dd = traceless_dot(d, up);
        Rational n2 = traceless_norm2(d) * traceless_norm2(up);
        fs.angle_eta12 = std::acos(Rational(dd).get_d() / std::sqrt(n2.get_d()));
        fs.angle_ok = 4 * dd * dd <= n2;
    }
    fs.s1 = region_in(p, F, {f13, f23, f14, f34});
    fs.s2 = region_in(p, F, {f14, f24, f23, f34});
    fs.c = fs.s1.hull(fs.s2);
    fs.c.tighten();
    return fs;
}

FlatsIdentityReport check_flats_identity(long p, const std::vector<Flag>& flags, const FourPointStructure& fs,
                                         std::mt19937_64& rng, int samples, MembershipMutator mutate) {
    FlatsIdentityReport rep;
    auto e = [&](int k) -> const Flag& { return flags[fs.numbering[k]]; };
    auto member = [&](const NormPoint& x, const Mat3& E) {
        bool in = in_apartment(x, E);
        return mutate ? mutate(x, in) : in;
    };
    Mat3 F12 = flat(e(0), e(1)).frame, F34 = flat(e(2), e(3)).frame, F14 = flat(e(0), e(3)).frame,
         F23 = flat(e(1), e(2)).frame;
    // (a)
    rep.intersecting_ok = true;
    Alcoved a1 = apartment_region(p, F12, F34);
    Alcoved a2 = apartment_region(p, F14, F23);
    if (a1.is_empty || a2.is_empty) {
        rep.intersecting_ok = false;
        rep.failures.push_back("F12∩F34 or F14∩F23 empty");
    }
    for (int s = 0; s < samples && rep.intersecting_ok; ++s) {
        bool first = s % 2 == 0;
        auto c = sample_alcoved(first ? a1 : a2, rng, 6);
        NormPoint x = chart_point(p, first ? F12 : F14, *c);
        ++rep.samples;
        bool ok = first ? member(x, F14) && member(x, F23) : member(x, F12) && member(x, F34);
        if (!ok) {
            rep.intersecting_ok = false;
            rep.failures.push_back(std::string("mutual membership fails for a sample of ") +
                                   (first ? "F12∩F34" : "F14∩F23"));
        }
    }
    // (b)
    Flat F13 = flat(e(0), e(2));
    Flat F24 = flat(e(1), e(3));
    rep.not_intersecting_ok = apartment_pieces(p, F13.frame, F24.frame).empty();
    if (!rep.not_intersecting_ok) rep.failures.push_back("F13∩F24 nonempty");
    Rational level = pair_sum(e(0), e(2), flat_base(p, F13));
    std::optional<Rational> inf;
    for (int s = 0; s < std::max(1, samples / 4); ++s) {
        Vec3 c{random_rational(rng, -8, 8, 4), random_rational(rng, -8, 8, 4), 0};
        Rational v = pair_sum(e(0), e(2), chart_point(p, F24.frame, c)) - level;
        if (!inf || v < *inf) inf = v;
    }
    rep.inf_b1_b3 = *inf;
    if (*inf <= 0) {
        rep.not_intersecting_ok = false;
        rep.failures.push_back("b1+b3 certificate not positive");
    }
    // (c)
    rep.strips_ok = true;
    std::array<int, 4> idx{0, 1, 2, 3};
    do {
        auto fl = [&](int a, int b) { return flat(flags[idx[a]], flags[idx[b]]).frame; };
        Mat3 A = fl(0, 1), B = fl(2, 3);
        Alcoved r = apartment_region(p, A, B);
        if (r.is_empty) continue;
        for (int s = 0; s < std::max(1, samples / 24); ++s) {
            NormPoint x = chart_point(p, A, *sample_alcoved(r, rng, 6));
            ++rep.samples;
            if (!member(x, fl(0, 2)) && !member(x, fl(0, 3))) {
                rep.strips_ok = false;
                rep.failures.push_back("strip inclusion fails");
                break;
            }
        }
    } while (std::next_permutation(idx.begin(), idx.end()) && rep.strips_ok);
    return rep;
}

bool EndpointReport::all() const {
    for (const auto& it : items)
        if (!it.second) return false;
    return true;
}

EndpointReport check_endpoint_props(long p, const Flag& e1, const Flag& e2, const Flag& e3, const NormPoint& x,
                                    const Rational& D6) {
    EndpointReport rep;
    auto seg = tripod_segment(p, e1, e2, e3);
    if (!seg || !seg->lower) throw std::invalid_argument("no lower endpoint");
    NormPoint pt = chart_point(p, seg->f12.frame, *seg->lower);
    std::array<const Flag*, 3> f{&e1, &e2, &e3};
    // b_{ij} normalized to vanish at the endpoint, scaled by sqrt 6
    std::array<std::array<Rational, 3>, 3> b;
    std::array<std::array<NormPoint, 3>, 3> toward;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            IdealPoint z = eta_pair(*f[i], *f[j]);
            b[i][j] = b[j][i] = busemann_raw(z, x) - busemann_raw(z, pt);
            Flat F = flat(*f[i], *f[j]);
            Vec3 c = weights_in(pt, F.frame);
            toward[i][j] = toward[j][i] = chart_point(p, F.frame, add(c, *chart_direction(F.frame, z)));
        }
    bool at_p = points_equal(x, pt);
    Rational d2 = distance2(x, pt);
    bool all_le = b[0][1] <= D6 && b[0][2] <= D6 && b[1][2] <= D6;
    rep.items.push_back({"distanceProperty", !all_le || d2 * 6 <= 4 * D6 * D6});
    if (at_p) return rep;
    bool some_far = false;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Angle a = angle(pt, x, toward[i][j]);
            if (a.value >= 2 * M_PI / 3 - 1e-9) some_far = true;
        }
    rep.items.push_back({"angleProperty", some_far});
    // angle to nu_3 along F_13
    Flat F13 = flat(e1, e3);
    NormPoint nu3 = chart_point(p, F13.frame, add(weights_in(pt, F13.frame), *chart_direction(F13.frame, nu(e3.line))));
    if (b[0][1] > std::max(b[0][2], b[1][2])) {
        rep.items.push_back({"angleProperty2", angle(pt, x, nu3).value < M_PI / 3 + 1e-9});
        if (seg->upper && !points_equal(x, chart_point(p, seg->f12.frame, *seg->upper))) {
            NormPoint q = chart_point(p, seg->f12.frame, *seg->upper);
            NormPoint nq =
                chart_point(p, F13.frame, add(weights_in(q, F13.frame), *chart_direction(F13.frame, nu(e3.line))));
            rep.items.push_back({"angleProperty3", angle(q, x, nq).value < M_PI / 3 + 1e-9});
        }
    }
    return rep;
}

// ---- generators ----

namespace {

using Res = std::array<long, 3>;

long modp(const BigInt& z, long p) {
    BigInt r = z % p;
    if (r < 0) r += p;
    return r.get_si();
}

long inv_mod(long a, long p) {
    for (long x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    throw std::logic_error("not invertible mod p");
}

Res reduce(Vec3 a, long p) {
    std::optional<long> m;
    for (auto& x : a)
        if (x != 0) m = m ? std::min(*m, val(x, p)) : val(x, p);
    Rational s = pow_p(p, -*m);
    Res r;
    for (int i = 0; i < 3; ++i) {
        Rational y = a[i] * s;
        r[i] = modp(y.get_num(), p) * inv_mod(modp(y.get_den(), p), p) % p;
    }
    // normalize: first nonzero = 1
    for (int i = 0; i < 3; ++i)
        if (r[i] != 0) {
            long iv = inv_mod(r[i], p);
            for (auto& y : r) y = y * iv % p;
            break;
        }
    return r;
}

long dotp(const Res& a, const Res& b, long p) { return (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % p; }

struct ResFlag {
    Res l, phi;
};

ResFlag residue(const Mat3& G, const Flag& f, long p) {
    return ResFlag{reduce(mul(inverse(G), f.line), p), reduce(row_mul(f.plane, G), p)};
}

bool res_opposite(const ResFlag& a, const ResFlag& b, long p) {
    return dotp(a.l, b.phi, p) != 0 && dotp(b.l, a.phi, p) != 0;
}

std::vector<Res> all_nonzero(long p) {
    std::vector<Res> out;
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c) {
                Res r{a, b, c};
                if (r == Res{0, 0, 0}) continue;
                if (reduce(Vec3{a, b, c}, p) == r) out.push_back(r);
            }
    return out;
}

std::optional<ResFlag> random_opposite_residue(const std::vector<ResFlag>& to, long p, std::mt19937_64& rng) {
    auto pts = all_nonzero(p);
    std::vector<ResFlag> cand;
    for (const auto& l : pts)
        for (const auto& phi : pts) {
            if (dotp(l, phi, p) != 0) continue;
            ResFlag f{l, phi};
            bool ok = true;
            for (const auto& t : to) ok = ok && res_opposite(f, t, p);
            if (ok) cand.push_back(f);
        }
    if (cand.empty()) return std::nullopt;
    std::uniform_int_distribution<size_t> u(0, cand.size() - 1);
    return cand[u(rng)];
}

Vec3 lift(const Mat3& G, const Res& r, long p, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> u(-1, 1);
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[i] = Rational(r[i] + p * u(rng));
    return mul(G, v);
}

std::optional<Flag> lift_flag(const Mat3& G, const ResFlag& f, long p, std::mt19937_64& rng) {
    Res m{0, 0, 0};
    for (const auto& c : all_nonzero(p)) {
        if (dotp(c, f.phi, p) != 0 || c == f.l) continue;
        m = c;
        break;
    }
    for (int tries = 0; tries < 16; ++tries) {
        Vec3 v = lift(G, f.l, p, rng), w = lift(G, m, p, rng);
        if (is_zero(cross(v, w))) continue;
        Flag out = flag_from_vectors(v, w);
        ResFlag back = residue(G, out, p);
        if (back.l == f.l && back.phi == f.phi) return out;
    }
    return std::nullopt;
}

std::optional<std::vector<Flag>> base_triple(long p, std::mt19937_64& rng) {
    Mat3 G = identity3();
    std::vector<ResFlag> res;
    std::vector<Flag> out;
    for (int k = 0; k < 3; ++k) {
        auto r = random_opposite_residue(res, p, rng);
        if (!r) return std::nullopt;
        auto f = lift_flag(G, *r, p, rng);
        if (!f) return std::nullopt;
        res.push_back(*r);
        out.push_back(*f);
    }
    if (!is_tripod_point(base_vertex(p), out[0], out[1], out[2])) return std::nullopt;
    return out;
}

// Adds a flag tripodal with every pair (a0, k) at an integral point of ∩_k F_{a0,k}.
std::optional<Flag> grow(long p, const std::vector<Flag>& flags, int a0, std::mt19937_64& rng, bool want_offset) {
    int n = int(flags.size());
    int k1 = a0 == 0 ? 1 : 0;
    Mat3 F = flat(flags[a0], flags[k1]).frame;
    Alcoved R = Alcoved::whole();
    for (int k = 0; k < n; ++k)
        if (k != a0) R = R.meet(apartment_region(p, F, flat(flags[a0], flags[k]).frame));
    if (R.is_empty) return std::nullopt;
    std::vector<Vec3> cand;
    for (int H = 1; H <= 40 && cand.size() < 6; ++H)
        for (int v = -H - 6; v <= H + 6; ++v) {
            Vec3 c{H, v, 0};
            if (R.interior(c)) cand.push_back(c);
        }
    if (want_offset) {
        // keep points off the vertical level of the base tripod
        std::vector<Vec3> keep;
        for (auto& c : cand)
            if (2 * c[1] - c[0] - c[2] != 0) keep.push_back(c);
        cand = keep;
    }
    if (cand.empty()) return std::nullopt;
    std::uniform_int_distribution<size_t> u(0, cand.size() - 1);
    Vec3 c = cand[u(rng)];
    Mat3 G = F;
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 3; ++r) G[r][i] *= pow_p(p, -c[i].get_num().get_si());
    ResFlag d0 = residue(G, flags[a0], p);
    std::optional<ResFlag> dk;
    for (int k = 0; k < n; ++k) {
        if (k == a0) continue;
        ResFlag r = residue(G, flags[k], p);
        if (dk && (r.l != dk->l || r.phi != dk->phi)) return std::nullopt;
        dk = r;
    }
    if (!res_opposite(d0, *dk, p)) return std::nullopt;
    auto rnew = random_opposite_residue({d0, *dk}, p, rng);
    if (!rnew) return std::nullopt;
    return lift_flag(G, *rnew, p, rng);
}

}  // namespace

std::vector<Flag> standard_triple() {
    return {make_flag(Vec3{1, 0, 0}, Vec3{0, 0, 1}), make_flag(Vec3{0, 0, 1}, Vec3{1, 0, 0}),
            flag_from_vectors(Vec3{1, 1, 1}, Vec3{0, 1, 0})};
}

std::optional<std::vector<Flag>> generate_sset(long p, int n, std::mt19937_64& rng, int attempts) {
    require_prime(p);
    if (n < 3) throw std::invalid_argument("an S-set needs at least three flags");
    for (int a = 0; a < attempts; ++a) {
        auto flags = base_triple(p, rng);
        if (!flags) continue;
        int stuck = 0;
        while (int(flags->size()) < n && stuck < 40) {
            std::uniform_int_distribution<int> u(0, int(flags->size()) - 1);
            auto f = grow(p, *flags, u(rng), rng, false);
            if (!f) {
                ++stuck;
                continue;
            }
            flags->push_back(*f);
            if (!is_sset(p, *flags).ok) {
                flags->pop_back();
                ++stuck;
            }
        }
        if (int(flags->size()) == n) return flags;
    }
    return std::nullopt;
}

std::optional<std::vector<Flag>> four_point_example(long p, std::mt19937_64& rng, int attempts) {
    for (int a = 0; a < attempts; ++a) {
        auto flags = base_triple(p, rng);
        if (!flags) continue;
        auto f = grow(p, *flags, 1, rng, true);
        if (!f) continue;
        flags->push_back(*f);
        if (!is_sset(p, *flags).ok) continue;
        auto fs = four_point_structure(p, *flags);
        if (fs.four_pod) continue;
        Vec3 d = sub(fs.cq, fs.cp);
        if (2 * d[1] - d[0] - d[2] == 0) continue;
        return flags;
    }
    return std::nullopt;
}

Flag random_flag(std::mt19937_64& rng, int height) {
    std::uniform_int_distribution<int> u(-height, height);
    for (;;) {
        Vec3 v{u(rng), u(rng), u(rng)}, w{u(rng), u(rng), u(rng)};
        if (is_zero(cross(v, w))) continue;
        return flag_from_vectors(v, w);
    }
}

std::vector<Flag> random_opposite_triple(std::mt19937_64& rng, int height) {
    for (;;) {
        std::vector<Flag> t{random_flag(rng, height), random_flag(rng, height), random_flag(rng, height)};
        if (opposite(t[0], t[1]) && opposite(t[1], t[2]) && opposite(t[0], t[2])) return t;
    }
}

Mat3 random_gl3(std::mt19937_64& rng, int height) {
    std::uniform_int_distribution<int> u(-height, height);
    for (;;) {
        Mat3 g;
        for (auto& r : g)
            for (auto& x : r) x = u(rng);
        if (det(g) != 0) return g;
    }
}

}  // namespace a2b
