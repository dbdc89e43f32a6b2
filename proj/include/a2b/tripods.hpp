#pragma once

#include "a2b/boundary.hpp"
#include "a2b/flatgeom.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace a2b {

// Holonomy shift of the triple, scaled by sqrt(6).
Rational shift(long p, const Flag& e1, const Flag& e2, const Flag& e3);
RadicalValue shift_value(long p, const Flag& e1, const Flag& e2, const Flag& e3);
// Class transport constant beta_a - beta_b along F_ab (scaled by sqrt(6)).
Rational transport_constant(long p, const Flag& a, const Flag& b);

// Exact tripod test: b_a + b_b at x equals its value on F_ab for all three pairs.
bool is_tripod_point(const NormPoint& x, const Flag& a, const Flag& b, const Flag& c);

struct Tripod {
    std::array<Flag, 3> flags;
    Flat f12;
    Vec3 chart;  // in the chart of F_12
    NormPoint point;
};

struct TripodResult {
    std::optional<Tripod> tripod;
    Rational shift;  // certificate when no tripod exists
};

TripodResult find_tripod(long p, const Flag& e1, const Flag& e2, const Flag& e3);

// l_{1,2,3} in the chart of F_12. lower/upper are nullopt when the side is a ray.
struct TripodSegment {
    Flat f12;
    Alcoved region;
    std::optional<Vec3> lower;
    std::optional<Vec3> upper;
    bool degenerate() const { return lower && upper && *lower == *upper; }
};

std::optional<TripodSegment> tripod_segment(long p, const Flag& e1, const Flag& e2, const Flag& e3);

struct SSetVerdict {
    bool ok = true;
    std::string certificate;
    std::vector<int> witness;
    Rational shift;
};

SSetVerdict is_sset(long p, const std::vector<Flag>& flags);

struct FourPointStructure {
    std::array<int, 4> numbering{};  // eta_k = flags[numbering[k]]
    bool four_pod = false;
    Flat f12;
    Vec3 cp, cq;  // p, p' in the chart of F_12
    NormPoint p, q;
    bool tripods_ok = false;
    bool segment_in_flats = false;
    double angle_eta12 = 0;  // angle at p between eta_12 and p', radians
    bool angle_ok = true;
    // polygon C between s1 = l_123 ∩ l_134 and s2 = l_124 ∩ l_234
    Alcoved s1, s2, c;
};

FourPointStructure four_point_structure(long p, const std::vector<Flag>& flags);

struct FlatsIdentityReport {
    bool intersecting_ok = false;     // F12 ∩ F34 = F14 ∩ F23 = C
    bool not_intersecting_ok = false; // F13 ∩ F24 empty
    bool strips_ok = false;           // F_{i0 i1} ∩ F_{j0 j1} ⊂ F_{i0 j0} ∪ F_{i0 j1}
    Rational inf_b1_b3;               // min of b1 + b3 - (b1 + b3)|F13 over F24 samples
    long samples = 0;
    std::vector<std::string> failures;
};

using MembershipMutator = bool (*)(const NormPoint&, bool);

FlatsIdentityReport check_flats_identity(long p, const std::vector<Flag>& flags, const FourPointStructure& fs,
                                         std::mt19937_64& rng, int samples, MembershipMutator mutate = nullptr);

struct EndpointReport {
    std::vector<std::pair<std::string, bool>> items;
    bool all() const;
};

// Items of the endpoint lemma for the lower endpoint of l_{1,2,3}, scaled threshold D6 (b = D6/sqrt 6).
EndpointReport check_endpoint_props(long p, const Flag& e1, const Flag& e2, const Flag& e3, const NormPoint& x,
                                    const Rational& D6);

// Generators.
std::vector<Flag> standard_triple();
std::optional<std::vector<Flag>> generate_sset(long p, int n, std::mt19937_64& rng, int attempts = 200);
// Four flags realizing the non-tree example.
std::optional<std::vector<Flag>> four_point_example(long p, std::mt19937_64& rng, int attempts = 200);
Flag random_flag(std::mt19937_64& rng, int height);
// Pairwise opposite triple with random heights (shift usually nonzero).
std::vector<Flag> random_opposite_triple(std::mt19937_64& rng, int height);
Mat3 random_gl3(std::mt19937_64& rng, int height);

}  // namespace a2b
