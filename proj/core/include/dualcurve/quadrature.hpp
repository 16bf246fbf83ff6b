#pragma once

#include <functional>
#include <vector>

#include "dualcurve/direction.hpp"

namespace dualcurve {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int points);

/*!
 * Quadrature on S^{n-1} with respect to spherical Lebesgue measure.
 *
 * n = 2 uses the trapezoid rule in the angle, n = 3 a product of
 * Gauss-Legendre in cos(theta) and the trapezoid rule in phi; both integrate
 * spherical polynomials of degree <= 2 exactly. n >= 4 falls back to
 * antipodally symmetric Halton points with equal weights, which is only
 * Monte Carlo accurate.
 */
struct SphereQuadrature {
  int dim = 0;
  std::vector<Direction> nodes;
  std::vector<double> weights;

  double integrate(const std::function<double(const Direction&)>& f) const;
  double total_weight() const;
};

SphereQuadrature sphere_rule(int dim, int level);

/// Level giving at least 4096 nodes for n = 2 and 8192 for n = 3.
int default_sphere_level(int dim);

/// Adaptive Gauss-Kronrod integral of f over [lo, hi]. The returned error
/// estimate is at most tol unless the subdivision depth is exhausted.
double arc_integral(const std::function<double(double)>& f, double lo, double hi, double tol,
                    double* error_estimate = nullptr);

/// Quadrature points on a flat facet (a segment in R^2, a convex polygon in
/// R^3 with vertices in cyclic order).
struct FacetQuadrature {
  std::vector<Vec> points;
  std::vector<double> weights;

  double integrate(const std::function<double(const Vec&)>& f) const;
  double area() const;
};

/// Fan triangulation from the centroid with collapsed Gauss-Legendre triangle
/// rules exact for polynomials up to the given degree.
FacetQuadrature facet_rule(const std::vector<Vec>& facet_vertices, int degree);

/// Adaptive integral of f over a facet: triangles (or segment pieces) are
/// split until the degree-8 rule agrees with its refinement to rel_tol.
double facet_integral(const std::vector<Vec>& facet_vertices, const std::function<double(const Vec&)>& f,
                      double rel_tol);

}  // namespace dualcurve
