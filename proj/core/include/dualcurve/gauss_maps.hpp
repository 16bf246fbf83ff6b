#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dualcurve/body.hpp"

namespace dualcurve {

/*!
 * The spherical region S^{n-1} cap Delta_i swept by the rays from the origin
 * through facet i of a polytope (the reverse radial Gauss image of v_i).
 *
 * apex_rays point at the facet's vertices, in the facet's cyclic order for
 * n = 3. Inactive halfspaces produce empty cells.
 */
struct ConeCell {
  std::size_t facet_index = 0;
  Direction normal;
  double offset = 0.0;
  bool active = false;
  std::vector<Direction> apex_rays;
  std::vector<Vec> facet_vertices;
};

/// Tie tolerance (relative) for declaring the radial Gauss image ambiguous.
inline constexpr double kGaussTieTolerance = 1e-10;

/// Index of the facet hit by the ray through u, or nullopt when two or more
/// facets are hit within the tie tolerance (u on a cone boundary).
std::optional<std::size_t> radial_gauss(const HPolytope& body, const Direction& u);

/// One cell per halfspace, in halfspace order.
std::vector<ConeCell> cone_partition(const HPolytope& body);

/// Membership of u in the closed cell.
bool cell_contains(const HPolytope& body, const ConeCell& cell, const Direction& u);

/// Area of a spherical triangle from l'Huilier's formula.
double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c);

/// Spherical measure of a cell: exact arc length for n = 2, a fan of
/// spherical triangles about the centroid ray for n = 3, and a Monte Carlo
/// estimate from the quasi-random sphere rule for n >= 4.
double cell_measure(const HPolytope& body, const ConeCell& cell);

/// Unit direction of the boundary point with outer normal v.
Direction reverse_radial_gauss_smooth(const SmoothBody& body, const Direction& v);

/// Fraction of random directions on which the cone cell containing u differs
/// from the normal cone of the polar vertex v_i / h_i containing u.
double polar_fan_disagreement(const HPolytope& body, std::size_t samples, std::uint64_t seed);

}  // namespace dualcurve
