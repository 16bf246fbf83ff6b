#pragma once

// Exhaustive n-subset routines shared by the polytope classes.

#include <functional>
#include <vector>

#include "dualcurve/direction.hpp"

namespace dualcurve::detail {

/// Calls visit(indices) for every k-subset of {0..m-1} in lexicographic order.
void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& visit);

/// Solves rows * x = rhs for a square system of unit rows. Returns false when
/// the rows are dependent at the rank tolerance.
bool solve_hyperplanes(const std::vector<const Vec*>& rows, const std::vector<double>& rhs, Vec& x);

/// Unit normal of the hyperplane through n affinely independent points.
bool hyperplane_normal(const std::vector<const Vec*>& points, Vec& normal);

/// Vertices of {x : x.v_i <= h_i}, merged at tol.
std::vector<Vec> enumerate_vertices(const std::vector<Direction>& normals, const std::vector<double>& offsets,
                                    double tol);

struct HullFacet {
  Vec normal;
  double offset = 0.0;
  std::vector<int> point_ids;
};

/// Facets of conv(points). Empty when the points do not span R^n.
std::vector<HullFacet> hull_facets(const std::vector<Vec>& points, double tol);

/// Dimension of the affine hull of the points.
int affine_rank(const std::vector<Vec>& points, double tol);

}  // namespace dualcurve::detail
