#include "a2b/construct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

namespace a2b {

namespace {

constexpr double kPi = std::numbers::pi;

// Affine form of an ideal point's raw Busemann value on the chart of F: a . c + k.
struct Affine {
    Vec3 a;
    Rational k;
};

Affine affine_in_chart(long p, const Mat3& F, const IdealPoint& z) {
    Rational k = busemann_raw(z, chart_point(p, F, Vec3{0, 0, 0}));
    Affine out{{}, k};
    for (int m = 0; m < 3; ++m) {
        Vec3 e{0, 0, 0};
        e[m] = 1;
        out.a[m] = busemann_raw(z, chart_point(p, F, e)) - k;
    }
    return out;
}

// lo <= z - off <= hi on the chart of F
Polygon clamp(long p, const Mat3& F, const IdealPoint& z, const Rational& off, const Rational& lo,
              const Rational& hi) {
    Affine f = affine_in_chart(p, F, z);
    Polygon P;
    P.add_range(f.a, lo + off - f.k, hi + off - f.k);
    return P;
}

Polygon level_range(const Rational& kappa, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    Polygon P;
    std::optional<Rational> a, b;
    if (lo) a = *lo - kappa;
    if (hi) b = *hi - kappa;
    P.add_range(Vec3{-1, 0, 1}, a, b);
    return P;
}

Rational excess(const Rational& v, const Rational& lo, const Rational& hi) {
    if (v > hi) return v - hi;
    if (v < lo) return lo - v;
    return 0;
}

std::optional<Vec3> sample_polygon(const Polygon& P, std::mt19937_64& rng, int radius, int den) {
    auto base = P.some_point();
    if (!base) return std::nullopt;
    auto vs = P.vertices();
    std::uniform_int_distribution<int> coin(0, 1);
    for (int tries = 0; tries < 40; ++tries) {
        Vec3 c = *base;
        if (!vs.empty()) {
            const Vec3& v = vs[std::uniform_int_distribution<size_t>(0, vs.size() - 1)(rng)];
            Rational t = random_rational(rng, 0, 1, den);
            c = add(c, scale(t, sub(v, c)));
        }
        if (tries < 30 && coin(rng)) {
            c[0] += random_rational(rng, -radius, radius, den);
            c[2] += random_rational(rng, -radius, radius, den);
        }
        if (P.contains(c)) return c;
    }
    return base;
}

// Points of a geodesic through one common frame.
struct Segment {
    NormPoint base;
    Vec3 cx, cy, sh;

    Segment(const NormPoint& x, const NormPoint& y) {
        CommonFrame cf = common_frame(x, y);
        base.p = x.p;
        base.frame = normalize_frame(cf.frame, x.p, &sh);
        base.inv = inverse(base.frame);
        base.vdet = val(det(base.frame), x.p);
        cx = cf.cx;
        cy = cf.cy;
    }

    NormPoint at(const Rational& t) const {
        NormPoint q = base;
        q.w = center(add(add(scale(1 - t, cx), scale(t, cy)), sh));
        return q;
    }
};

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

int pick(std::mt19937_64& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

bool le_radical(const Rational& raw, int m, const Rational& D) {
    return compare_radical(RadicalValue{raw / m, m}, RadicalValue{D, 1}) <= 0;
}

// Run f(i) for i in [0, n) over the configured threads.
template <class F>
void parallel_for(long n, F f) {
    int th = std::min<long>(thread_count(), std::max<long>(n, 1));
    if (th <= 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < th; ++t)
        pool.emplace_back([&, t] {
            for (long i = t; i < n; i += th) f(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

int thread_count() {
    if (const char* e = std::getenv("A2B_THREADS")) {
        int v = std::atoi(e);
        if (v >= 1) return v;
    }
    return 1;
}

std::mt19937_64 index_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix(splitmix(seed) ^ (index * 0x632be59bd9b4e019ULL)));
}

EpsChoice epsilon_from_config(const Rational& S6, const Rational& R6) {
    if (S6 <= 0) throw std::invalid_argument("S must be positive");
    if (R6 <= 10 * S6) throw std::invalid_argument("R must exceed 10S");
    double S = S6.get_d() / std::sqrt(6.0), R = R6.get_d() / std::sqrt(6.0);
    auto fits = [&](double a) {
        return 3 * S / -std::cos(2 * kPi / 3 + a) >= 11 * S / 2 && 11 * S / 2 * std::cos(a) > 5 * S &&
               (R + 10 * S) / 2 * -std::cos(2 * kPi / 3 - a) > 5 * S;
    };
    EpsChoice out;
    for (int k = 1; k < 60; ++k) {
        double a = kPi / 6 / std::ldexp(1.0, k);
        if (fits(a)) {
            out.alpha_hat = a;
            break;
        }
    }
    double a = out.alpha_hat;
    double e = std::min({3 * S * std::sin(a / 2), R * std::sin(a) / (2 + 4 * std::sin(a)), (R - 10 * S) / 4});
    Rational r = from_double(e * (1 - 1e-6) / S6.get_d(), 40);
    out.eps = S6 * r;
    double eps = out.eps.get_d();
    out.verified = a > 0 && a < kPi / 6 && fits(a) && eps > 0 && eps < 3 * S * std::sin(a / 2) &&
                   2 * eps / (R - 4 * eps) < std::sin(a) && eps < (R - 10 * S) / 4;
    return out;
}

Normalization normalize_sset(const SSetData& s, const Rational& S_min6) {
    int n = s.size();
    Normalization nz;
    nz.i0 = 0;
    std::vector<Rational> K(n);
    for (int a = 0; a < n; ++a)
        if (a != nz.i0) K[a] = transport_constant(s.p, s.flags[a], s.flags[nz.i0]);
    bool have = false;
    Rational lo, hi;
    for (const auto& [t, x] : s.tripod)
        for (int a : t) {
            Rational v = class_coordinate(s.flags[a], x) - K[a];
            if (!have || v < lo) lo = v;
            if (!have || v > hi) hi = v;
            have = true;
        }
    Rational mid = (lo + hi) / 2;
    nz.spread6 = (hi - lo) / 2;
    nz.S6 = nz.spread6 > 0 ? nz.spread6 : S_min6;
    nz.center.resize(n);
    for (int i = 0; i < n; ++i) nz.center[i] = mid + K[i];
    nz.off.assign(n, std::vector<Rational>(n));
    nz.offp.assign(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            NormPoint y = chart_point(s.p, s.flats[i][j].frame, Vec3{0, 0, 0});
            Rational cls = class_coordinate(s.flags[i], y) - nz.center[i];
            nz.off[i][j] = busemann_raw(eta_pair(s.flags[i], s.flags[j]), y) - cls;
            nz.offp[i][j] = busemann_raw(xi_pair(s.flags[i], s.flags[j]), y) + cls;
        }
    return nz;
}

Rational RankOneSet::bn(int i, int j, const NormPoint& x) const { return busemann_raw(eta[i][j], x) - nz.off[i][j]; }

Rational RankOneSet::bnp(int i, int j, const NormPoint& x) const { return busemann_raw(xi[i][j], x) - nz.offp[i][j]; }

Polygon RankOneSet::strip(int i, int j) const { return clamp(s.p, frame(i, j), eta[i][j], nz.off[i][j], -cfg.S6, cfg.S6); }

RankOneSet build_rank_one(long p, const std::vector<Flag>& flags, Config cfg) {
    RankOneSet r;
    r.s = make_sset_data(p, flags);
    r.tree = build_tree(r.s);
    r.nz = normalize_sset(r.s, cfg.S_min6);
    cfg.S6 = r.nz.S6;
    if (cfg.R6 == 0) cfg.R6 = 11 * cfg.S6;
    auto ec = epsilon_from_config(cfg.S6, cfg.R6);
    cfg.eps = ec.eps;
    cfg.alpha_hat = ec.alpha_hat;
    r.cfg = cfg;
    int n = r.s.size();
    r.eta.assign(n, std::vector<IdealPoint>(n));
    r.xi.assign(n, std::vector<IdealPoint>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) {
                r.eta[i][j] = eta_pair(flags[i], flags[j]);
                r.xi[i][j] = xi_pair(flags[i], flags[j]);
            }

    auto region_of = [&](const std::vector<std::pair<int, int>>& T) {
        const Mat3& F = r.frame(T[0].first, T[0].second);
        Alcoved c = Alcoved::whole();
        for (size_t a = 1; a < T.size(); ++a) c = c.meet(apartment_region(p, F, r.frame(T[a].first, T[a].second)));
        return c;
    };
    auto finish = [&](KPiece& k, const Polygon& base) {
        k.i0 = k.pairs[0].first;
        k.j0 = k.pairs[0].second;
        const Mat3& F = r.frame(k.i0, k.j0);
        Rational kappa = r.s.b(k.i0, chart_point(p, F, Vec3{0, 0, 0}));
        k.U = base.meet(level_range(kappa, k.blo, k.bhi)).meet(r.strip(k.i0, k.j0));
        k.member = k.U.some_point();
    };

    for (size_t v = 0; v < r.tree.vertices.size(); ++v) {
        KPiece k;
        k.vertex = true;
        k.tree_index = int(v);
        k.B = r.tree.vertices[v];
        k.pairs = membership_pairs(r.tree, k.B);
        k.blo = k.bhi = k.B[k.pairs[0].first];
        finish(k, region_of(k.pairs).polygon());
        r.pieces.push_back(std::move(k));
    }
    for (size_t e = 0; e < r.tree.edges.size(); ++e) {
        const TreeEdge& ed = r.tree.edges[e];
        KPiece k;
        k.tree_index = int(e);
        TreePoint mid = r.tree.edge_point(int(e), ed.v >= 0 ? ed.len / 2 : Rational(1));
        k.B = mid.B;
        k.pairs = membership_pairs(r.tree, k.B);
        int i0 = k.pairs[0].first;
        Rational bu = r.tree.vertices[ed.u][i0];
        if (ed.v >= 0) {
            Rational bv = r.tree.vertices[ed.v][i0];
            k.blo = std::min(bu, bv);
            k.bhi = std::max(bu, bv);
        } else if (k.B[i0] > bu) {
            k.blo = bu;
        } else {
            k.bhi = bu;
        }
        finish(k, region_of(k.pairs).polygon());
        r.pieces.push_back(std::move(k));
    }
    std::set<std::vector<std::pair<int, int>>> seen;
    for (const auto& k : r.pieces) {
        auto T = k.pairs;
        std::sort(T.begin(), T.end());
        if (seen.insert(T).second) r.tsets.push_back(k.pairs);
    }
    return r;
}

namespace {

// Lazily evaluated pair conditions of one point.
struct PairCache {
    const RankOneSet& r;
    const NormPoint& q;
    std::vector<signed char> state;

    PairCache(const RankOneSet& r_, const NormPoint& q_) : r(r_), q(q_), state(r_.s.size() * r_.s.size(), -1) {}

    bool ok(int i, int j) {
        if (i > j) std::swap(i, j);
        signed char& s = state[i * r.s.size() + j];
        if (s < 0) {
            Rational t = r.cfg.threshold6();
            s = r.bn(i, j, q) <= t && r.bnp(i, j, q) <= t;
        }
        return s;
    }

    bool all(const std::vector<std::pair<int, int>>& T) {
        for (auto [i, j] : T)
            if (!ok(i, j)) return false;
        return true;
    }
};

bool c_member_cached(const RankOneSet& r, const NormPoint& q, PairCache& pc) {
    Rational R2 = r.cfg.R2();
    for (const auto& k : r.pieces) {
        if (!k.member || !pc.all(k.pairs)) continue;
        Rational e = excess(r.bn(k.i0, k.j0, q), -r.cfg.S6, r.cfg.S6);
        if (e * e > 6 * R2) continue;
        Rational bi = r.s.b(k.i0, q);
        Rational f = 0;
        if (k.blo && bi < *k.blo) f = *k.blo - bi;
        if (k.bhi && bi > *k.bhi) f = bi - *k.bhi;
        if (f * f > 2 * R2) continue;
        if (piece_dist2(r, k, q) <= R2) return true;
    }
    return false;
}

}  // namespace

bool k_class_member(const RankOneSet& r, const std::vector<std::pair<int, int>>& T, const NormPoint& q) {
    PairCache pc(r, q);
    return pc.all(T);
}

bool k_class_member(const RankOneSet& r, const TreePoint& t, const NormPoint& q) {
    return k_class_member(r, membership_pairs(r.tree, t.B), q);
}

bool K_member(const RankOneSet& r, const NormPoint& q) {
    PairCache pc(r, q);
    for (const auto& T : r.tsets)
        if (pc.all(T)) return true;
    return false;
}

Rational piece_dist2(const RankOneSet& r, const KPiece& k, const NormPoint& q) {
    return dist2_to_chart_polygon(q, r.frame(k.i0, k.j0), k.U).d2;
}

bool c_member(const RankOneSet& r, const NormPoint& q) {
    PairCache pc(r, q);
    return c_member_cached(r, q, pc);
}

NormPoint step_toward(const NormPoint& x, const NormPoint& z, double len) {
    Rational d2 = distance2(x, z);
    if (d2 == 0 || len <= 0) return x;
    double t = len / std::sqrt(d2.get_d());
    if (t >= 1) return z;
    Rational tr = from_double(t, 30);
    if (tr <= 0) return x;
    return geodesic_point(x, z, tr);
}

NormPoint random_point_near(long p, std::mt19937_64& rng, const NormPoint& x, int height) {
    if (pick(rng, 3) == 0) {
        Vec3 w = x.w;
        for (auto& c : w) c += random_rational(rng, -height, height, 2);
        return norm_point(p, x.frame, w);
    }
    Mat3 g = random_gl3(rng, height);
    Vec3 w;
    for (auto& c : w) c = random_rational(rng, -height, height, 2);
    return norm_point(p, g, w);
}

VerificationReport verify_convexity(const SetOracle& o, const Sampler& sampler, long n,
                                    std::optional<Rational> eps2, std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.name = o.name;
    rep.mode = eps2 ? "local" : "global";
    rep.requested = n;
    rep.seed = seed;
    struct Out {
        bool done = false;
        long checks = 0;
        std::optional<Violation> v;
    };
    std::vector<Out> outs(n);
    double eps = eps2 ? std::sqrt(eps2->get_d()) : 0;
    auto in = [&](const NormPoint& q, const Sample& a, const Sample& b) {
        if (o.via && ((a.cert >= 0 && o.via(q, a)) || (b.cert >= 0 && o.via(q, b)))) return true;
        return o.member(q);
    };
    parallel_for(n, [&](long idx) {
        auto rng = index_rng(seed, idx);
        std::optional<Sample> xs, ys;
        for (int a = 0; a < 20 && !xs; ++a) xs = sampler(rng);
        if (!xs) return;
        if (eps2) {
            for (int a = 0; a < 40 && !ys; ++a) {
                NormPoint z = random_point_near(xs->x.p, rng, xs->x);
                NormPoint y = step_toward(xs->x, z, eps * uniform(rng, 0.05, 0.95));
                Rational d2 = distance2(xs->x, y);
                if (d2 == 0 || d2 >= *eps2) continue;
                if (o.via && xs->cert >= 0 && o.via(y, *xs))
                    ys = Sample{y, xs->cert, xs->anchor};
                else if (o.member(y))
                    ys = Sample{y, -1, {}};
            }
        } else {
            for (int a = 0; a < 20 && !ys; ++a) ys = sampler(rng);
        }
        if (!ys) return;
        Out& out = outs[idx];
        out.done = true;
        if (points_equal(xs->x, ys->x)) return;
        Segment seg(xs->x, ys->x);
        for (int m = 1; m <= kSegmentPoints; ++m) {
            Rational t = ratio(m, kSegmentPoints + 1);
            NormPoint q = seg.at(t);
            ++out.checks;
            if (!in(q, *xs, *ys)) {
                out.v = Violation{idx, xs->x, ys->x, t};
                break;
            }
        }
    });
    for (auto& out : outs) {
        if (!out.done) {
            ++rep.starved;
            continue;
        }
        ++rep.pairs;
        rep.checks += out.checks;
        if (out.v) rep.violations.push_back(*out.v);
    }
    if (rep.starved) rep.notes.push_back("sampler starved on " + std::to_string(rep.starved) + " pairs");
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SetOracle k_oracle(const RankOneSet& r) {
    SetOracle o;
    o.name = "K";
    o.member = [&r](const NormPoint& q) { return K_member(r, q); };
    o.via = [&r](const NormPoint& q, const Sample& s) { return k_class_member(r, r.pieces[s.cert].pairs, q); };
    return o;
}

SetOracle c_oracle(const RankOneSet& r) {
    SetOracle o;
    o.name = "C";
    o.member = [&r](const NormPoint& q) { return c_member(r, q); };
    o.via = [&r](const NormPoint& q, const Sample& s) {
        return k_class_member(r, r.pieces[s.cert].pairs, q) && distance2(q, s.anchor) <= r.cfg.R2();
    };
    return o;
}

namespace {

int chart_radius(const Rational& S6) { return std::max(2, int(std::ceil(S6.get_d())) + 1); }

std::optional<NormPoint> piece_point(const RankOneSet& r, const KPiece& k, std::mt19937_64& rng) {
    auto c = sample_polygon(k.U, rng, chart_radius(r.cfg.S6), 4);
    if (!c) return std::nullopt;
    return chart_point(r.s.p, r.frame(k.i0, k.j0), *c);
}

std::optional<NormPoint> strip_point(const RankOneSet& r, std::mt19937_64& rng) {
    int n = r.s.size();
    int i = pick(rng, n), j = pick(rng, n - 1);
    if (j >= i) ++j;
    int k = pick(rng, n);
    while (k == i || k == j) k = pick(rng, n);
    const Mat3& F = r.frame(i, j);
    Polygon P = r.strip(i, j);
    Vec3 c = weights_in(r.s.tripod_point(i, j, k), F);
    int rad = chart_radius(r.cfg.S6) * 2;
    for (int t = 0; t < 20; ++t) {
        Vec3 d = c;
        d[0] += random_rational(rng, -rad, rad, 4);
        d[1] += random_rational(rng, -rad, rad, 4);
        if (P.contains(d)) return chart_point(r.s.p, F, d);
    }
    return std::nullopt;
}

std::optional<int> k_cert(const RankOneSet& r, const NormPoint& q, int hint) {
    PairCache pc(r, q);
    if (hint >= 0 && pc.all(r.pieces[hint].pairs)) return hint;
    for (size_t a = 0; a < r.pieces.size(); ++a)
        if (pc.all(r.pieces[a].pairs)) return int(a);
    return std::nullopt;
}

}  // namespace

Sampler k_sampler(const RankOneSet& r) {
    return [&r](std::mt19937_64& rng) -> std::optional<Sample> {
        double S = r.cfg.S6.get_d() / std::sqrt(6.0);
        int hint = -1;
        std::optional<NormPoint> u;
        if (pick(rng, 2) == 0) {
            u = strip_point(r, rng);
        } else {
            hint = pick(rng, int(r.pieces.size()));
            if (r.pieces[hint].member) u = piece_point(r, r.pieces[hint], rng);
        }
        if (!u) return std::nullopt;
        NormPoint q = *u;
        if (pick(rng, 5) != 0) q = step_toward(*u, random_point_near(r.s.p, rng, *u), uniform(rng, 0, 6 * S));
        auto c = k_cert(r, q, hint);
        if (!c) return std::nullopt;
        return Sample{q, *c, {}};
    };
}

Sampler c_sampler(const RankOneSet& r) {
    return [&r](std::mt19937_64& rng) -> std::optional<Sample> {
        double R = std::sqrt(r.cfg.R2().get_d());
        int k = pick(rng, int(r.pieces.size()));
        const KPiece& pc = r.pieces[k];
        if (!pc.member) return std::nullopt;
        auto u = piece_point(r, pc, rng);
        if (!u) return std::nullopt;
        NormPoint q = *u;
        if (pick(rng, 5) != 0) q = step_toward(*u, random_point_near(r.s.p, rng, *u), uniform(rng, 0, R));
        if (!k_class_member(r, pc.pairs, q) || distance2(q, *u) > r.cfg.R2()) return std::nullopt;
        return Sample{q, k, *u};
    };
}

std::vector<NormPoint> exclusion_points(const RankOneSet& r) {
    const Config& c = r.cfg;
    Rational e3 = from_double(3 * std::sqrt(6.0) * c.eps.get_d(), 40);
    while (e3 < 0 || e3 * e3 < 54 * c.eps2()) e3 += ratio(1, 1L << 20);
    Rational target = c.S6 + 2 * c.R6 + e3;
    std::vector<NormPoint> out;
    int n = r.s.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Mat3& F = r.frame(i, j);
            Affine f = affine_in_chart(r.s.p, F, r.eta[i][j]);
            Vec3 d{-1, 2, -1};
            Rational ad = dot(f.a, d);
            std::set<Rational> levels;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                Vec3 w = weights_in(r.s.tripod_point(i, j, k), F);
                Rational h = w[2] - w[0];
                for (int s = -2; s <= 2; ++s) levels.insert(h + s * c.S6);
            }
            for (const Rational& h : levels) {
                Vec3 c0{-h / 2, 0, h / 2};
                Rational s = (target + r.nz.off[i][j] - f.k - dot(f.a, c0)) / ad;
                out.push_back(chart_point(r.s.p, F, add(c0, scale(s, d))));
            }
        }
    return out;
}

VerificationReport verify_rank1(const RankOneSet& r, long n, std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.name = "rank1";
    rep.mode = "containment";
    rep.requested = n;
    rep.seed = seed;
    Sampler smp = c_sampler(r);
    std::vector<std::optional<Sample>> samples(n);
    std::vector<char> bad(n, 0);
    Rational lim = 4 * r.cfg.R2();
    parallel_for(n, [&](long idx) {
        auto rng = index_rng(seed, idx);
        std::optional<Sample> s;
        for (int a = 0; a < 20 && !s; ++a) s = smp(rng);
        if (!s) return;
        samples[idx] = s;
        const KPiece& k = r.pieces[s->cert];
        bool near = dist2_to_chart_polygon(s->x, r.frame(k.i0, k.j0), r.strip(k.i0, k.j0)).d2 <= lim;
        int m = r.s.size();
        for (int i = 0; i < m && !near; ++i)
            for (int j = i + 1; j < m && !near; ++j)
                near = dist2_to_chart_polygon(s->x, r.frame(i, j), r.strip(i, j)).d2 <= lim;
        bad[idx] = !near;
    });
    std::vector<NormPoint> members;
    for (long i = 0; i < n; ++i) {
        if (!samples[i]) {
            ++rep.starved;
            continue;
        }
        ++rep.pairs;
        ++rep.checks;
        members.push_back(samples[i]->x);
        if (bad[i]) rep.violations.push_back(Violation{i, samples[i]->x, samples[i]->x, 0});
    }
    auto ex = exclusion_points(r);
    std::vector<char> hit(ex.size(), 0);
    parallel_for(long(ex.size()), [&](long a) {
        if (c_member(r, ex[a])) {
            hit[a] = 1;
            return;
        }
        for (const auto& m : members)
            if (distance2(ex[a], m) <= r.cfg.eps2()) {
                hit[a] = 1;
                return;
            }
    });
    for (size_t a = 0; a < ex.size(); ++a) {
        rep.checks += long(members.size()) + 1;
        if (hit[a]) rep.violations.push_back(Violation{-1, ex[a], ex[a], 1});
    }
    rep.notes.push_back(std::to_string(ex.size()) + " exclusion points");
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

bool HoroballUnion::member(const NormPoint& x) const {
    if (distance2(p, x) > R * R) return false;
    return le_radical(b1.scaled(x), b1.radicand(), D) || le_radical(b2.scaled(x), b2.radicand(), D);
}

HoroballUnion horoball_union(const NormPoint& p, const Rational& R, const Rational& D, const IdealPoint& z1,
                             const IdealPoint& z2) {
    if (z1.kind != z2.kind) throw std::invalid_argument("ideal points of different type");
    if (R <= 0 || 2 * D <= R) throw std::invalid_argument("requires D > R cos(pi/3) > 0");
    return HoroballUnion{p, R, D, busemann(z1, p), busemann(z2, p)};
}

Rational Thickening::b(int i, int j, const NormPoint& x) const {
    return busemann_raw(eta_pair(flags[i], flags[j]), x) - off[i][j];
}

Rational Thickening::bp(int i, int j, const NormPoint& x) const {
    return busemann_raw(xi_pair(flags[i], flags[j]), x) - offp[i][j];
}

bool Thickening::in_K(int i, const NormPoint& x) const {
    Rational t = threshold(), tp = threshold_p();
    for (int j : {(i + 1) % 3, (i + 2) % 3})
        if (b(i, j, x) > t || bp(i, j, x) > tp) return false;
    return true;
}

bool Thickening::in_C(int i, const NormPoint& x) const {
    if (!in_K(i, x)) return false;
    if (mode == Mode::Horoball) return true;
    return dist2_to_chart_polygon(x, cframe[i], ctilde[i]).d2 <= R6 * R6 / 6;
}

bool Thickening::member(const NormPoint& x) const {
    for (int i = 0; i < 3; ++i)
        if (in_C(i, x)) return true;
    return false;
}

bool Thickening::two_of_three(const NormPoint& x) const {
    int nb = 0, nbp = 0;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        nb += b(i, j, x) <= threshold();
        nbp += bp(i, j, x) <= threshold_p();
    }
    return nb >= 2 && nbp >= 2;
}

namespace {

Thickening thicken_base(long p, const std::array<Flag, 3>& flags, const Rational& w6) {
    auto tr = find_tripod(p, flags[0], flags[1], flags[2]);
    if (!tr.tripod) throw std::invalid_argument("no tripod: shift " + to_string(tr.shift));
    Thickening t;
    t.p = p;
    t.flags = flags;
    t.center = tr.tripod->point;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            t.off[i][j] = busemann_raw(eta_pair(flags[i], flags[j]), t.center) + w6;
            t.offp[i][j] = busemann_raw(xi_pair(flags[i], flags[j]), t.center) - w6;
        }
    return t;
}

}  // namespace

Thickening thicken_horoball(long p, const std::array<Flag, 3>& flags, const Rational& D6, const Rational& Dp6) {
    if (D6 <= 0) throw std::invalid_argument("requires D > 0");
    if (2 * Dp6 <= D6 || Dp6 >= 2 * D6) throw std::invalid_argument("requires D' in (D/2, 2D)");
    Thickening t = thicken_base(p, flags, 0);
    t.mode = Thickening::Mode::Horoball;
    t.D6 = D6;
    t.Dp6 = Dp6;
    return t;
}

Thickening thicken_strips(long p, const std::array<Flag, 3>& flags, const Rational& S6, const Rational& R6,
                          const Rational& w6) {
    if (S6 <= 0) throw std::invalid_argument("requires S > 0");
    if (R6 <= 10 * S6) throw std::invalid_argument("requires R > 10S");
    Thickening t = thicken_base(p, flags, w6);
    // W_i must contain the class of some tripodal point: l_123 has to meet S_12.
    auto seg = tripod_segment(p, flags[0], flags[1], flags[2]);
    auto level = [&](const Vec3& c) { return t.b(0, 1, chart_point(p, seg->f12.frame, c)); };
    if ((seg->lower && level(*seg->lower) > S6) || (seg->upper && level(*seg->upper) < -S6))
        throw std::invalid_argument("W_i must contain a tripodal class");
    t.mode = Thickening::Mode::Strips;
    t.S6 = S6;
    t.R6 = R6;
    t.w6 = w6;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        Flat F = flat(flags[i], flags[j]);
        t.cframe[i] = F.frame;
        t.ctilde[i] = apartment_region(p, F.frame, flat(flags[i], flags[k]).frame)
                          .polygon()
                          .meet(clamp(p, F.frame, eta_pair(flags[i], flags[j]), t.off[i][j], -S6, S6));
    }
    return t;
}

SetOracle thickening_oracle(const Thickening& t) {
    SetOracle o;
    o.name = t.mode == Thickening::Mode::Horoball ? "union K_i" : "union C_i";
    o.member = [&t](const NormPoint& q) { return t.member(q); };
    o.via = [&t](const NormPoint& q, const Sample& s) {
        if (!t.in_K(s.cert, q)) return false;
        return t.mode == Thickening::Mode::Horoball || distance2(q, s.anchor) <= t.R6 * t.R6 / 6;
    };
    return o;
}

Sampler thickening_sampler(const Thickening& t) {
    return [&t](std::mt19937_64& rng) -> std::optional<Sample> {
        if (t.mode == Thickening::Mode::Horoball) {
            double D = std::max(t.D6.get_d(), t.Dp6.get_d()) / std::sqrt(6.0);
            int a = pick(rng, 3), b = (a + 1 + pick(rng, 2)) % 3;
            Mat3 F = flat(t.flags[a], t.flags[b]).frame;
            Vec3 c = weights_in(t.center, F);
            int rad = std::max(2, int(std::ceil(2 * D)));
            c[0] += random_rational(rng, -rad, rad, 4);
            c[2] += random_rational(rng, -rad, rad, 4);
            NormPoint u = chart_point(t.p, F, c);
            NormPoint q = step_toward(u, random_point_near(t.p, rng, u), uniform(rng, 0, 2 * D));
            for (int i = 0; i < 3; ++i)
                if (t.in_K(i, q)) return Sample{q, i, {}};
            return std::nullopt;
        }
        int i = pick(rng, 3);
        auto c = sample_polygon(t.ctilde[i], rng, std::max(2, int(std::ceil(t.S6.get_d())) * 3), 4);
        if (!c) return std::nullopt;
        NormPoint u = chart_point(t.p, t.cframe[i], *c);
        double R = t.R6.get_d() / std::sqrt(6.0);
        NormPoint q = step_toward(u, random_point_near(t.p, rng, u), uniform(rng, 0, R));
        if (!t.in_K(i, q) || distance2(q, u) > t.R6 * t.R6 / 6) return std::nullopt;
        return Sample{q, i, u};
    };
}

namespace {

VerificationReport busemann_report(long p, const std::vector<IdealPoint>& zs, const NormPoint& o, long n,
                                   std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.name = "busemann";
    rep.mode = "lipschitz+convexity";
    rep.requested = n;
    rep.seed = seed;
    std::vector<std::optional<Violation>> bad(n);
    std::vector<long> checks(n, 0);
    parallel_for(n, [&](long idx) {
        auto rng = index_rng(seed, idx);
        const IdealPoint& z = zs[pick(rng, int(zs.size()))];
        int m = busemann_radicand(z.kind);
        NormPoint x = random_point_near(p, rng, o), y = random_point_near(p, rng, o);
        Rational bx = busemann_raw(z, x), by = busemann_raw(z, y);
        Rational d2 = distance2(x, y);
        ++checks[idx];
        if (compare_radical_vs_sqrt(RadicalValue{abs(bx - by) / m, m}, d2) > 0) {
            bad[idx] = Violation{idx, x, y, 0};
            return;
        }
        if (d2 == 0) return;
        Segment seg(x, y);
        for (int k = 1; k < 8; ++k) {
            Rational t = ratio(k, 8);
            ++checks[idx];
            if (busemann_raw(z, seg.at(t)) > (1 - t) * bx + t * by) {
                bad[idx] = Violation{idx, x, y, t};
                return;
            }
        }
    });
    for (long i = 0; i < n; ++i) {
        ++rep.pairs;
        rep.checks += checks[i];
        if (bad[i]) rep.violations.push_back(*bad[i]);
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

VerificationReport two_of_three_report(const Thickening& t, long n, std::uint64_t seed) {
    VerificationReport rep;
    rep.name = "convexConditions";
    rep.mode = "equivalence";
    rep.requested = n;
    rep.seed = seed;
    std::vector<char> bad(n, 0);
    double D = std::max(t.threshold().get_d(), t.threshold_p().get_d()) / std::sqrt(6.0);
    parallel_for(n, [&](long idx) {
        auto rng = index_rng(seed, idx);
        NormPoint q = step_toward(t.center, random_point_near(t.p, rng, t.center), uniform(rng, 0, 4 * D));
        bool u = false;
        for (int i = 0; i < 3; ++i) u = u || t.in_K(i, q);
        bad[idx] = u != t.two_of_three(q);
    });
    for (long i = 0; i < n; ++i) {
        ++rep.pairs;
        ++rep.checks;
        if (bad[i]) rep.violations.push_back(Violation{i, t.center, t.center, 0});
    }
    return rep;
}

Sampler filtered(Sampler s, std::function<bool(const NormPoint&)> keep) {
    return [s, keep](std::mt19937_64& rng) -> std::optional<Sample> {
        auto x = s(rng);
        if (!x || !keep(x->x)) return std::nullopt;
        return Sample{x->x, -1, {}};
    };
}

}  // namespace

VerifyResult run_verify(long p, const std::vector<Flag>& flags, const VerifyOptions& opt) {
    VerifyResult res;
    auto want = [&](const std::string& s) { return opt.suite == "all" || opt.suite == s; };
    static const std::set<std::string> known{"all", "busemann", "thicken", "kset", "cset", "rank1"};
    if (!known.count(opt.suite)) {
        res.hypothesis_failures.push_back("unknown suite " + opt.suite);
        res.code = 3;
        return res;
    }
    auto verdict = is_sset(p, flags);
    if (!verdict.ok) {
        res.hypothesis_failures.push_back("not an S-set: " + verdict.certificate);
        res.code = 3;
        return res;
    }
    long n = opt.samples;
    std::uint64_t seed = opt.seed;

    if (opt.plant == VerifyOptions::Plant::TwoBalls) {
        NormPoint a = base_vertex(p);
        NormPoint b = norm_point(p, identity3(), Vec3{6, 0, -6});
        Rational r2 = 2;
        SetOracle o;
        o.name = "two balls";
        o.member = [=](const NormPoint& q) { return distance2(q, a) <= r2 || distance2(q, b) <= r2; };
        Sampler s = [=](std::mt19937_64& rng) -> std::optional<Sample> {
            const NormPoint& c = pick(rng, 2) ? a : b;
            NormPoint q = step_toward(c, random_point_near(p, rng, c), uniform(rng, 0, 1.2));
            if (distance2(q, c) > r2) return std::nullopt;
            return Sample{q, -1, {}};
        };
        res.reports.push_back(verify_convexity(o, s, n, std::nullopt, seed));
    } else {
        if (want("busemann")) {
            std::vector<IdealPoint> zs;
            for (size_t i = 0; i < flags.size(); ++i) {
                zs.push_back(center_of(flags[i]));
                for (size_t j = i + 1; j < flags.size(); ++j) {
                    zs.push_back(eta_pair(flags[i], flags[j]));
                    zs.push_back(xi_pair(flags[i], flags[j]));
                }
            }
            res.reports.push_back(busemann_report(p, zs, base_vertex(p), n, seed));
        }
        if (want("thicken") && flags.size() >= 3) {
            std::array<Flag, 3> tri{flags[0], flags[1], flags[2]};
            Rational D6 = 6, Dp6 = opt.plant == VerifyOptions::Plant::WideDprime ? Rational(18) : Rational(6);
            try {
                Thickening th = thicken_horoball(p, tri, D6, Dp6);
                res.reports.push_back(verify_convexity(thickening_oracle(th), thickening_sampler(th), n,
                                                       std::nullopt, seed));
                res.reports.back().name = "union K_i";
                res.reports.push_back(two_of_three_report(th, n, seed + 1));
                Thickening tc = thicken_strips(p, tri, 1, 11, 0);
                res.reports.push_back(verify_convexity(thickening_oracle(tc), thickening_sampler(tc), n,
                                                       std::nullopt, seed + 2));
            } catch (const std::invalid_argument& e) {
                res.hypothesis_failures.push_back(std::string("thicken: ") + e.what());
            }
        }
        if (want("kset") || want("cset") || want("rank1")) {
            RankOneSet r = build_rank_one(p, flags);
            if (want("kset")) {
                if (opt.plant == VerifyOptions::Plant::SlabPunch) {
                    SetOracle o;
                    o.name = "K with punched slab";
                    Rational h = r.cfg.S6 / 2;
                    o.member = [&r, h](const NormPoint& q) {
                        Rational v = r.bn(0, 1, q);
                        return K_member(r, q) && !(v > -h && v < h);
                    };
                    res.reports.push_back(
                        verify_convexity(o, filtered(k_sampler(r), o.member), n, std::nullopt, seed));
                } else {
                    res.reports.push_back(verify_convexity(k_oracle(r), k_sampler(r), n, std::nullopt, seed));
                }
            }
            if (want("cset"))
                res.reports.push_back(verify_convexity(c_oracle(r), c_sampler(r), n, r.cfg.eps2(), seed));
            if (want("rank1")) res.reports.push_back(verify_rank1(r, n, seed));
        }
    }
    bool violated = false, starved = false;
    for (const auto& rep : res.reports) {
        violated = violated || !rep.violations.empty();
        starved = starved || rep.starved * 10 > rep.requested || rep.pairs == 0;
    }
    if (!res.hypothesis_failures.empty())
        res.code = 3;
    else if (violated)
        res.code = 2;
    else if (starved) {
        res.hypothesis_failures.push_back("sampler starvation");
        res.code = 3;
    }
    return res;
}

}  // namespace a2b
