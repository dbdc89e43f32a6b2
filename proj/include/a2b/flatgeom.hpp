#pragma once

#include "a2b/building.hpp"
#include "a2b/chart.hpp"

#include <vector>

namespace a2b {

// Part of A(F) ∩ A(E) in the chart of F on which the E-weights are w_j = c_{sigma[j]} + t_j.
struct Piece {
    Alcoved region;
    std::array<int, 3> sigma{};
    Vec3 t;
};

// F and E are normalized frames.
std::vector<Piece> apartment_pieces(long p, const Mat3& F, const Mat3& E);
Alcoved apartment_region(long p, const Mat3& F, const Mat3& E);

struct ChartDistance {
    Rational d2;
    Vec3 c;  // nearest point, chart weights of F
    int evaluations = 0;
};

// Exact minimum of d^2(q, y) over y in the polygon U of the chart of F (normalized frame).
ChartDistance dist2_to_chart_polygon(const NormPoint& q, const Mat3& F, const Polygon& U);

}  // namespace a2b
