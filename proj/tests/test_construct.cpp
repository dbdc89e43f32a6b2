#include "checks.hpp"

#include <doctest.h>

#include <cmath>
#include <queue>
#include <set>

using namespace a2b;

namespace {

const double kPi = std::acos(-1.0);

RankOneSet random_rank_one(long p, int n, std::mt19937_64& rng) {
    auto f = generate_sset(p, n, rng);
    REQUIRE(f);
    return build_rank_one(p, *f);
}

// Chart point of F_ij where bn(i, j) takes the value v; moves along the vertical direction.
NormPoint at_level(const RankOneSet& r, int i, int j, const Rational& v) {
    const Mat3& F = r.frame(i, j);
    Vec3 up{-1, 2, -1};
    Rational f0 = r.bn(i, j, chart_point(r.s.p, F, {0, 0, 0}));
    Rational f1 = r.bn(i, j, chart_point(r.s.p, F, up));
    return chart_point(r.s.p, F, scale((v - f0) / (f1 - f0), up));
}

// Pieces are indexed like the subdivided tree: vertices first, then edges.
std::vector<std::vector<int>> piece_graph(const RankOneSet& r) {
    int V = int(r.tree.vertices.size());
    std::vector<std::vector<int>> g(r.pieces.size());
    for (size_t e = 0; e < r.tree.edges.size(); ++e) {
        int node = V + int(e);
        auto link = [&](int a) {
            g[a].push_back(node);
            g[node].push_back(a);
        };
        link(r.tree.edges[e].u);
        if (r.tree.edges[e].v >= 0) link(r.tree.edges[e].v);
    }
    return g;
}

std::vector<int> path(const std::vector<std::vector<int>>& g, int a, int b) {
    std::vector<int> prev(g.size(), -1);
    std::queue<int> q;
    q.push(a);
    prev[a] = a;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g[u])
            if (prev[w] < 0) {
                prev[w] = u;
                q.push(w);
            }
    }
    std::vector<int> out{b};
    while (out.back() != a) out.push_back(prev[out.back()]);
    return out;
}

std::vector<char> piece_membership(const RankOneSet& r, const NormPoint& q) {
    std::vector<char> m(r.pieces.size());
    for (size_t k = 0; k < r.pieces.size(); ++k) m[k] = k_class_member(r, r.pieces[k].pairs, q);
    return m;
}

}  // namespace

TEST_CASE("epsilon and alpha hat") {
    for (auto [S, R] : {std::pair{Rational(1), Rational(11)}, {ratio(1, 3), Rational(4)}, {Rational(5), Rational(51)}}) {
        EpsChoice e = epsilon_from_config(S, R);
        CHECK(e.verified);
        CHECK(e.alpha_hat > 0);
        CHECK(e.alpha_hat < kPi / 6);
        CHECK(11.0 / 2 * std::cos(e.alpha_hat) > 5);
        CHECK(3 / -std::cos(2 * kPi / 3 + e.alpha_hat) >= 11.0 / 2);
        CHECK(e.eps > 0);
        EpsChoice d = epsilon_from_config(2 * S, 2 * R);
        CHECK(d.eps == 2 * e.eps);
        CHECK(d.alpha_hat == e.alpha_hat);
    }
    CHECK_THROWS(epsilon_from_config(0, 11));
    CHECK_THROWS(epsilon_from_config(1, 10));
}

TEST_CASE("normalization puts the tripod classes in [-S, S]") {
    std::mt19937_64 rng(51);
    for (int k = 0; k < 12; ++k) {
        long p = k % 2 ? 2 : 3;
        RankOneSet r = random_rank_one(p, 3 + k % 4, rng);
        const Rational& S = r.cfg.S6;
        CHECK(S > 0);
        CHECK(r.cfg.R6 == 11 * S);
        Rational lo, hi;
        bool first = true;
        for (const auto& [t, x] : r.s.tripod)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    if (a == b) continue;
                    Rational v = r.bn(t[a], t[b], x);
                    CHECK(abs(v) <= S);
                    CHECK(r.bnp(t[a], t[b], x) == -v);
                    CHECK(r.cfg.threshold6() - v <= 5 * S);
                    if (first || v < lo) lo = v;
                    if (first || v > hi) hi = v;
                    first = false;
                }
        if (r.nz.spread6 > 0) CHECK(hi - lo == 2 * S);
        // equivariance
        Mat3 g = random_gl3(rng, 2);
        std::vector<Flag> moved;
        for (const auto& f : r.s.flags) moved.push_back(transform(g, f));
        CHECK(normalize_sset(make_sset_data(p, moved)).S6 == S);
    }
}

TEST_CASE("single tripod promotes S to the minimum") {
    RankOneSet r = build_rank_one(2, standard_triple());
    CHECK(r.nz.spread6 == 0);
    CHECK(r.cfg.S6 == 1);
}

TEST_CASE("four-point example has a positive spread") {
    std::mt19937_64 rng(52);
    for (long p : {2L, 3L}) {
        auto f = four_point_example(p, rng);
        REQUIRE(f);
        RankOneSet r = build_rank_one(p, *f);
        auto fs = four_point_structure(p, *f);
        IdealPoint z = eta_pair((*f)[fs.numbering[0]], (*f)[fs.numbering[1]]);
        Rational gap = abs(busemann_raw(z, fs.p) - busemann_raw(z, fs.q));
        CHECK(gap > 0);
        CHECK(2 * r.nz.spread6 >= gap);
    }
}

TEST_CASE("class membership at and beyond the threshold") {
    std::mt19937_64 rng(53);
    RankOneSet r = random_rank_one(2, 4, rng);
    const Rational& S = r.cfg.S6;
    for (const auto& [t, x] : r.s.tripod) {
        std::vector<std::pair<int, int>> T{{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}};
        CHECK(k_class_member(r, T, x));
    }
    for (int i = 0; i < r.s.size(); ++i)
        for (int j = 0; j < r.s.size(); ++j) {
            if (i == j) continue;
            std::vector<std::pair<int, int>> T{{i, j}};
            CHECK(k_class_member(r, T, at_level(r, i, j, 4 * S)));
            CHECK_FALSE(k_class_member(r, T, at_level(r, i, j, 5 * S)));
            CHECK(k_class_member(r, T, at_level(r, i, j, -4 * S)));
            CHECK_FALSE(k_class_member(r, T, at_level(r, i, j, -5 * S)));
        }
}

TEST_CASE("every piece has an explicit member") {
    std::mt19937_64 rng(54);
    for (int k = 0; k < 10; ++k) {
        RankOneSet r = random_rank_one(k % 2 ? 2 : 3, 3 + k % 4, rng);
        for (const auto& piece : r.pieces) {
            REQUIRE(piece.member);
            NormPoint m = chart_point(r.s.p, r.frame(piece.i0, piece.j0), *piece.member);
            CHECK(k_class_member(r, piece.pairs, m));
            CHECK(piece_dist2(r, piece, m) == 0);
            CHECK(abs(r.bn(piece.i0, piece.j0, m)) <= r.cfg.S6);
            CHECK(K_member(r, m));
            CHECK(c_member(r, m));
        }
    }
}

TEST_CASE("strips lie in both sets; far levels do not") {
    std::mt19937_64 rng(55);
    for (int k = 0; k < 6; ++k) {
        RankOneSet r = random_rank_one(k % 2 ? 2 : 5, 3 + k % 3, rng);
        for (int i = 0; i < r.s.size(); ++i)
            for (int j = i + 1; j < r.s.size(); ++j) {
                Polygon st = r.strip(i, j);
                auto vs = st.vertices();
                auto c0 = st.some_point();
                REQUIRE(c0);
                for (int m = 0; m < 6; ++m) {
                    Vec3 c = add(*c0, scale(random_rational(rng, -6, 6, 2), {1, 0, -1}));
                    NormPoint x = chart_point(r.s.p, r.frame(i, j), c);
                    if (!st.contains(weights_in(x, r.frame(i, j)))) continue;
                    CHECK(K_member(r, x));
                }
                NormPoint far = at_level(r, i, j, 10 * r.cfg.S6 + 2 * r.cfg.R6);
                CHECK_FALSE(c_member(r, far));
            }
        for (const auto& x : exclusion_points(r)) CHECK_FALSE(c_member(r, x));
    }
}

TEST_CASE("class membership is convex along the tree") {
    std::mt19937_64 rng(56);
    long pairs = 0;
    for (int k = 0; k < 6; ++k) {
        RankOneSet r = random_rank_one(k % 2 ? 2 : 3, 4 + k % 3, rng);
        auto g = piece_graph(r);
        Sampler s = k_sampler(r);
        for (int m = 0; m < 60; ++m) {
            auto q = s(rng);
            if (!q) continue;
            auto in = piece_membership(r, q->x);
            for (size_t a = 0; a < in.size(); ++a)
                for (size_t b = a + 1; b < in.size(); ++b) {
                    if (!in[a] || !in[b]) continue;
                    ++pairs;
                    for (int c : path(g, int(a), int(b))) CHECK(in[c]);
                }
        }
    }
    CHECK(pairs > 100);
}

TEST_CASE("close members cover every class between theirs") {
    std::mt19937_64 rng(57);
    long tested = 0;
    for (int k = 0; k < 6; ++k) {
        RankOneSet r = random_rank_one(k % 2 ? 2 : 3, 4 + k % 3, rng);
        auto g = piece_graph(r);
        Sampler s = k_sampler(r);
        double eps = r.cfg.eps.get_d();
        for (int m = 0; m < 60; ++m) {
            auto xs = s(rng);
            if (!xs) continue;
            NormPoint y = step_toward(xs->x, random_point_near(r.s.p, rng, xs->x), eps * 0.9);
            if (distance2(xs->x, y) >= r.cfg.eps2() || !K_member(r, y)) continue;
            auto ix = piece_membership(r, xs->x), iy = piece_membership(r, y);
            for (size_t a = 0; a < ix.size(); ++a)
                for (size_t b = 0; b < iy.size(); ++b) {
                    if (!ix[a] || !iy[b]) continue;
                    ++tested;
                    for (int c : path(g, int(a), int(b))) CHECK((ix[c] || iy[c]));
                }
        }
    }
    CHECK(tested > 100);
}

TEST_CASE("convexity of K and C on a small scene") {
    std::mt19937_64 rng(58);
    RankOneSet r = random_rank_one(2, 4, rng);
    auto k = verify_convexity(k_oracle(r), k_sampler(r), 60, std::nullopt, 1);
    CHECK(k.violations.empty());
    CHECK(k.ok());
    auto c = verify_convexity(c_oracle(r), c_sampler(r), 60, r.cfg.eps2(), 2);
    CHECK(c.violations.empty());
    CHECK(c.ok());
    auto r1 = verify_rank1(r, 60, 3);
    CHECK(r1.violations.empty());
}

TEST_CASE("verification is independent of the thread count") {
    std::mt19937_64 rng(59);
    RankOneSet r = random_rank_one(3, 3, rng);
    setenv("A2B_THREADS", "1", 1);
    auto a = verify_convexity(k_oracle(r), k_sampler(r), 30, std::nullopt, 9);
    setenv("A2B_THREADS", "3", 1);
    auto b = verify_convexity(k_oracle(r), k_sampler(r), 30, std::nullopt, 9);
    unsetenv("A2B_THREADS");
    CHECK(a.pairs == b.pairs);
    CHECK(a.checks == b.checks);
    CHECK(a.starved == b.starved);
}

TEST_CASE("horoball union") {
    NormPoint o = base_vertex(2);
    IdealPoint z1 = nu({1, 0, 0}), z2 = nu({0, 1, 0});
    CHECK_THROWS(horoball_union(o, 2, 1, z1, z2));
    CHECK_THROWS(horoball_union(o, 2, 1, z1, mu({0, 1, 0})));
    HoroballUnion h = horoball_union(o, 2, ratio(3, 2), z1, z2);
    CHECK(h.member(o));
    CHECK_FALSE(h.member(norm_point(2, identity3(), {3, 0, 0})));
    CHECK(h.member(norm_point(2, identity3(), {1, 0, 0})));  // b1 < 0
    SetOracle o1{"horoballs", [&](const NormPoint& x) { return h.member(x); }, nullptr};
    Sampler s = [&](std::mt19937_64& rng) -> std::optional<Sample> {
        NormPoint x = step_toward(o, random_point_near(2, rng, o, 3), std::uniform_real_distribution<double>(0, 2)(rng));
        if (!h.member(x)) return std::nullopt;
        return Sample{x, -1, {}};
    };
    auto rep = verify_convexity(o1, s, 200, std::nullopt, 4);
    CHECK(rep.violations.empty());
    CHECK(rep.pairs >= 150);
}

TEST_CASE("planted non-convex oracle is caught") {
    NormPoint a = base_vertex(2), b = norm_point(2, identity3(), {6, 0, -6});
    SetOracle o{"two balls", [&](const NormPoint& x) { return distance2(x, a) <= 2 || distance2(x, b) <= 2; },
                nullptr};
    Sampler s = [&](std::mt19937_64& rng) -> std::optional<Sample> {
        const NormPoint& c = rng() % 2 ? a : b;
        NormPoint x = step_toward(c, random_point_near(2, rng, c, 2), 1.0);
        return Sample{x, -1, {}};
    };
    auto rep = verify_convexity(o, s, 100, std::nullopt, 5);
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("thickened tripods") {
    std::mt19937_64 rng(60);
    auto f = standard_triple();
    std::array<Flag, 3> t{f[0], f[1], f[2]};
    CHECK_THROWS(thicken_horoball(2, t, 0, 1));
    CHECK_THROWS(thicken_horoball(2, t, 6, 3));
    CHECK_THROWS(thicken_horoball(2, t, 6, 12));
    CHECK_THROWS(thicken_strips(2, t, 1, 10));
    CHECK_THROWS(thicken_strips(2, t, 1, 11, -2));
    auto bad = random_opposite_triple(rng, 4);
    if (shift(2, bad[0], bad[1], bad[2]) != 0) CHECK_THROWS(thicken_horoball(2, {bad[0], bad[1], bad[2]}, 6, 6));

    for (int k = 0; k < 4; ++k) {
        long p = k % 2 ? 2 : 3;
        auto s = generate_sset(p, 3, rng);
        REQUIRE(s);
        std::array<Flag, 3> tr{(*s)[0], (*s)[1], (*s)[2]};
        Thickening h = thicken_horoball(p, tr, 6, Rational(6 + k));
        CHECK(h.member(h.center));
        Sampler smp = thickening_sampler(h);
        long agree = 0;
        for (int m = 0; m < 150; ++m) {
            std::optional<Sample> drawn = m % 2 ? std::nullopt : smp(rng);
            NormPoint x = drawn ? drawn->x : step_toward(h.center, random_point_near(p, rng, h.center), 3.0);
            CHECK(h.member(x) == h.two_of_three(x));
            ++agree;
        }
        CHECK(agree == 150);
        auto rep = verify_convexity(thickening_oracle(h), smp, 60, std::nullopt, 6);
        CHECK(rep.violations.empty());
        Thickening c = thicken_strips(p, tr, 1, 11);
        CHECK(c.member(c.center));
        auto rc = verify_convexity(thickening_oracle(c), thickening_sampler(c), 60, std::nullopt, 7);
        CHECK(rc.violations.empty());
    }
}

TEST_CASE("near the far side of C_1 the union stays in K_1") {
    std::mt19937_64 rng(62);
    auto t = test::thickening_lemma(rng, 6, 6);
    CHECK(t.tested >= 5);
    CHECK(t.not_in_k1 == 0);
    CHECK(t.segment_failures == 0);
}

TEST_CASE("run_verify exit codes") {
    std::mt19937_64 rng(61);
    auto f = generate_sset(2, 3, rng);
    REQUIRE(f);
    VerifyOptions opt;
    opt.samples = 40;
    opt.suite = "kset";
    CHECK(run_verify(2, *f, opt).code == 0);
    opt.plant = VerifyOptions::Plant::SlabPunch;
    CHECK(run_verify(2, *f, opt).code == 2);
    opt.plant = VerifyOptions::Plant::TwoBalls;
    CHECK(run_verify(2, *f, opt).code == 2);
    opt.suite = "thicken";
    opt.plant = VerifyOptions::Plant::WideDprime;
    CHECK(run_verify(2, *f, opt).code == 3);
    opt.plant = VerifyOptions::Plant::None;
    opt.suite = "nonsense";
    CHECK(run_verify(2, *f, opt).code == 3);
}
