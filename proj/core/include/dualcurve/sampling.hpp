#pragma once

#include <random>
#include <utility>
#include <vector>

#include "dualcurve/body.hpp"

namespace dualcurve {

/// Uniform direction on S^{n-1} (normalized Gaussian vector).
Direction random_direction(int dim, std::mt19937_64& rng);

/// pairs directions followed by their negations: v_1, -v_1, v_2, -v_2, ...
std::vector<Direction> random_symmetric_directions(int dim, int pairs, std::mt19937_64& rng);

/// Origin-symmetric Wulff shape on random directions with offsets drawn
/// uniformly from [lo, hi]. Redraws until every halfspace supports a facet,
/// narrowing the range towards its midpoint after repeated failures.
HPolytope random_symmetric_polytope(int dim, int pairs, std::mt19937_64& rng, double lo = 0.8, double hi = 1.2);

/// Values on the normals of a symmetric polytope, equal on antipodes, drawn
/// uniformly from [lo, hi].
std::vector<double> random_even_values(const HPolytope& body, std::mt19937_64& rng, double lo, double hi);

/// Axis-aligned box [lower_1, upper_1] x ... with lower < 0 < upper.
HPolytope box(const std::vector<double>& lower, const std::vector<double>& upper);

/// [-half, half]^n.
HPolytope cube(int dim, double half = 1.0);

/// Two boxes that agree in every coordinate but one and overlap in that
/// one, so that their union is convex. Both contain the origin.
std::pair<HPolytope, HPolytope> random_box_pair(int dim, std::mt19937_64& rng);

/// conv{+-e_i}, as an H-polytope with the 2^n normals (+-1, ..., +-1)/sqrt(n).
HPolytope cross_polytope(int dim);

}  // namespace dualcurve
