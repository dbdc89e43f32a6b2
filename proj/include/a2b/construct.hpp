#pragma once

#include "a2b/tree.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace a2b {

// Lengths suffixed 6 are scaled by sqrt 6 (the unit of b_{i,j} and b'_{i,j}).
struct Config {
    Rational S6;
    Rational S_min6 = 1;
    Rational R6;  // default 11 S
    Rational eps;  // true units
    double alpha_hat = 0;
    long samples = 10000;
    std::uint64_t seed = 1;
    double guard = 1e-9;

    Rational threshold6() const { return 4 * S6; }
    Rational R2() const { return R6 * R6 / 6; }
    Rational eps2() const { return eps * eps; }
};

struct EpsChoice {
    double alpha_hat = 0;
    Rational eps;
    bool verified = false;
};

// Largest alpha_hat on the grid pi/6 * 2^-k meeting the construction inequalities, and eps below all bounds.
EpsChoice epsilon_from_config(const Rational& S6, const Rational& R6);

// Busemann data of an S-set after normalization.
struct Normalization {
    int i0 = 0;
    Rational S6;          // half the class spread, at least S_min6
    Rational spread6;     // raw half spread before promotion
    std::vector<Rational> center;  // class coordinate of the middle of W_i
    std::vector<std::vector<Rational>> off, offp;  // b_ij = q_eta - off, b'_ij = q_xi - offp
};

Normalization normalize_sset(const SSetData& s, const Rational& S_min6 = 1);

// A representative of the tree: a vertex, or an edge or ray without its endpoints.
struct KPiece {
    std::vector<std::pair<int, int>> pairs;  // T
    int i0 = 0, j0 = 1;
    bool vertex = false;
    int tree_index = -1;  // vertex or edge index
    Polygon U;            // Ĉ for vertices, union of Ĉ along the open edge otherwise
    std::optional<Vec3> member;
    std::vector<Rational> B;  // B-coordinates of the representative
    std::optional<Rational> blo, bhi;  // range of B_{i0} over the piece
};

struct RankOneSet {
    SSetData s;
    MetricTree tree;
    Normalization nz;
    Config cfg;
    std::vector<KPiece> pieces;
    std::vector<std::vector<std::pair<int, int>>> tsets;  // distinct T over all pieces
    std::vector<std::vector<IdealPoint>> eta, xi;

    Rational bn(int i, int j, const NormPoint& x) const;
    Rational bnp(int i, int j, const NormPoint& x) const;
    // Strip S_ij in the chart of F_ij.
    Polygon strip(int i, int j) const;
    const Mat3& frame(int i, int j) const { return s.flats[i][j].frame; }
};

// Throws std::invalid_argument for an invalid S-set.
RankOneSet build_rank_one(long p, const std::vector<Flag>& flags, Config cfg = {});

bool k_class_member(const RankOneSet& r, const std::vector<std::pair<int, int>>& T, const NormPoint& q);
bool k_class_member(const RankOneSet& r, const TreePoint& t, const NormPoint& q);
bool K_member(const RankOneSet& r, const NormPoint& q);
bool c_member(const RankOneSet& r, const NormPoint& q);
// Squared distance from q to U of a piece.
Rational piece_dist2(const RankOneSet& r, const KPiece& piece, const NormPoint& q);

// Sampled membership with a witness: the oracle set is known to contain x through anchor.
struct Sample {
    NormPoint x;
    int cert = -1;
    NormPoint anchor;
};

struct SetOracle {
    std::string name;
    std::function<bool(const NormPoint&)> member;
    // Exact sufficient test through the certificate of a known member; optional.
    std::function<bool(const NormPoint&, const Sample&)> via;
};

using Sampler = std::function<std::optional<Sample>(std::mt19937_64&)>;

struct Violation {
    long pair = 0;
    NormPoint x, y;
    Rational t;
};

struct VerificationReport {
    std::string name;
    std::string mode;
    long requested = 0;
    long pairs = 0;
    long checks = 0;
    long starved = 0;
    std::vector<Violation> violations;
    double seconds = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
    bool ok() const { return violations.empty() && starved * 10 < requested + 1 && pairs > 0; }
};

constexpr int kSegmentPoints = 32;

// Threads from A2B_THREADS (default 1); results do not depend on it.
int thread_count();
std::mt19937_64 index_rng(std::uint64_t seed, std::uint64_t index);

// Local mode when eps2 is given: pairs have d^2 < eps2.
VerificationReport verify_convexity(const SetOracle& o, const Sampler& sampler, long n,
                                    std::optional<Rational> eps2, std::uint64_t seed);

// Oracles and samplers of the main construction.
SetOracle k_oracle(const RankOneSet& r);
SetOracle c_oracle(const RankOneSet& r);
Sampler k_sampler(const RankOneSet& r);
Sampler c_sampler(const RankOneSet& r);

VerificationReport verify_rank1(const RankOneSet& r, long n, std::uint64_t seed);
// Points of F_ij with b_ij = S + 2R + 3 eps (rounded up).
std::vector<NormPoint> exclusion_points(const RankOneSet& r);

// Horoball union B_R(p) ∩ ({b1 <= D} ∪ {b2 <= D}); throws std::invalid_argument unless D > R/2.
struct HoroballUnion {
    NormPoint p;
    Rational R, D;
    BusemannFunction b1, b2;
    bool member(const NormPoint& x) const;
};
HoroballUnion horoball_union(const NormPoint& p, const Rational& R, const Rational& D, const IdealPoint& z1,
                             const IdealPoint& z2);

// Thickened tripod.
struct Thickening {
    enum class Mode { Horoball, Strips };
    Mode mode = Mode::Horoball;
    long p = 2;
    std::array<Flag, 3> flags;
    NormPoint center;  // lower endpoint of l_123
    Rational D6, Dp6;  // horoball mode
    Rational S6, R6, w6;  // strips mode; W_i centered at beta_i(center) + w
    // eta/xi offsets for the pair {a, b}
    std::array<std::array<Rational, 3>, 3> off, offp;
    std::array<Polygon, 3> ctilde;  // in the chart of F_{i,i+1}
    std::array<Mat3, 3> cframe;

    Rational b(int i, int j, const NormPoint& x) const;
    Rational bp(int i, int j, const NormPoint& x) const;
    bool in_K(int i, const NormPoint& x) const;
    bool in_C(int i, const NormPoint& x) const;
    bool member(const NormPoint& x) const;
    // At least two b <= D and at least two b' <= D'.
    bool two_of_three(const NormPoint& x) const;
    Rational threshold() const { return mode == Mode::Horoball ? D6 : 4 * S6; }
    Rational threshold_p() const { return mode == Mode::Horoball ? Dp6 : 4 * S6; }
};

// Throws std::invalid_argument when the triple has no tripod or parameters are out of range.
Thickening thicken_horoball(long p, const std::array<Flag, 3>& flags, const Rational& D6, const Rational& Dp6);
Thickening thicken_strips(long p, const std::array<Flag, 3>& flags, const Rational& S6, const Rational& R6,
                          const Rational& w6 = 0);

SetOracle thickening_oracle(const Thickening& t);
Sampler thickening_sampler(const Thickening& t);

// Geodesic toward z, truncated to length about len (true units).
NormPoint step_toward(const NormPoint& x, const NormPoint& z, double len);
NormPoint random_point_near(long p, std::mt19937_64& rng, const NormPoint& x, int height = 4);

// Full verification entry used by the command line: returns 0, 2 or 3.
struct VerifyResult {
    int code = 0;
    std::vector<VerificationReport> reports;
    std::vector<std::string> hypothesis_failures;
};

struct VerifyOptions {
    std::string suite = "all";
    long samples = 1000;
    std::uint64_t seed = 1;
    // planted variants for the self-test
    enum class Plant { None, SlabPunch, TwoBalls, WideDprime } plant = Plant::None;
};

VerifyResult run_verify(long p, const std::vector<Flag>& flags, const VerifyOptions& opt);

}  // namespace a2b
