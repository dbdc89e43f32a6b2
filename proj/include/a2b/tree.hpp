#pragma once

#include "a2b/tripods.hpp"

#include <map>
#include <string>
#include <vector>

namespace a2b {

// A finite S-set with its flats and tripodal points.
struct SSetData {
    long p = 2;
    std::vector<Flag> flags;
    std::vector<std::vector<Flat>> flats;  // flats[i][j] for i != j, frame (L_i, P_i ∩ P_j, L_j)
    // tripodal point of {i,j,k}, stored at the sorted triple
    std::map<std::array<int, 3>, NormPoint> tripod;

    int size() const { return int(flags.size()); }
    const NormPoint& tripod_point(int i, int j, int k) const;
    // Center Busemann function of eta_k, scaled by sqrt 2.
    Rational b(int k, const NormPoint& x) const;
};

// Throws std::invalid_argument when the flags do not form an S-set.
SSetData make_sset_data(long p, const std::vector<Flag>& flags);

// A point of the union of flats: x lies in F_{i,j} with chart weights c.
struct FPoint {
    int i = 0, j = 1;
    Vec3 c;
    NormPoint x;
};

FPoint fpoint(const SSetData& s, int i, int j, const Vec3& c);

// B_k(x) for x in F_{i,j}, scaled by sqrt 2.
Rational b_coordinate(const SSetData& s, int k, const FPoint& x);
// Same value through an explicit representative in F_ij ∩ F_ik or F_ij ∩ F_jk.
Rational b_coordinate_dual(const SSetData& s, int k, const FPoint& x);
std::vector<Rational> b_vector(const SSetData& s, const FPoint& x);

// sup_k |B_k(x) - B_k(y)|, scaled by sqrt 2.
Rational tree_distance(const std::vector<Rational>& bx, const std::vector<Rational>& by);

struct TreeEdge {
    int u = -1;
    int v = -1;    // -1 for a ray
    int end = -1;  // end label of a ray
    Rational len;  // finite edges only
};

struct TreePoint {
    int vertex = -1;
    int edge = -1;
    Rational offset;  // from edges[edge].u
    std::vector<Rational> B;
};

struct MetricTree {
    int ends = 0;
    std::vector<std::vector<Rational>> vertices;  // B-coordinates
    std::vector<TreeEdge> edges;
    // (B_i + B_j) on the geodesic between ends i and j
    std::vector<std::vector<Rational>> pair_level;
    std::vector<std::vector<Rational>> vdist;  // path lengths between vertices

    Rational graph_distance(const TreePoint& a, const TreePoint& b) const;
    TreePoint vertex_point(int v) const;
    TreePoint edge_point(int e, const Rational& t) const;
};

MetricTree build_tree(const SSetData& s);
// Exact four-point condition over all end quadruples; returns the number of failures.
int four_point_failures(const MetricTree& t);

std::optional<TreePoint> locate(const MetricTree& t, const std::vector<Rational>& B);
TreePoint project(const SSetData& s, const MetricTree& t, const FPoint& x);

std::vector<std::pair<int, int>> membership_pairs(const MetricTree& t, const std::vector<Rational>& B);

// C_[x] in the chart of F_{i0,j0} and the vertical level where [x] lives.
struct ClassSet {
    std::vector<std::pair<int, int>> pairs;
    int i0 = 0, j0 = 1;
    Alcoved c;
    Rational level;  // c3 - c1 on the vertical line B_{i0} = B_{i0}([x])
    Alcoved on_level;
    std::optional<Vec3> member;
};

ClassSet class_set(const SSetData& s, const MetricTree& t, const std::vector<Rational>& B);

// Realization of D(x, y) inside one flat.
struct Realization {
    int i = 0, j = 1;
    FPoint x, y;
    Rational D;  // scaled by sqrt 2
    bool verified = false;
};

Realization realize(const SSetData& s, const MetricTree& t, const FPoint& x, const FPoint& y);

// Random point of the union of flats near the tripodal points.
FPoint random_fpoint(const SSetData& s, std::mt19937_64& rng, int radius = 6);

std::string tree_dot(const MetricTree& t);

}  // namespace a2b
