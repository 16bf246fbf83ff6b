#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dualcurve/body.hpp"
#include "dualcurve/gauss_maps.hpp"

namespace dualcurve {

struct Atom {
  Direction dir;
  double weight = 0.0;
};

/*!
 * Finite Borel measure on S^{n-1} concentrated on finitely many directions.
 *
 * Weights are nonnegative and atom directions pairwise distinct (angle above
 * 1e-9). even() reports whether the atoms are closed under negation with
 * matching weights.
 */
class DiscreteSphericalMeasure {
 public:
  static constexpr double kAngleTolerance = 1e-9;
  static constexpr double kEvenTolerance = 1e-9;

  DiscreteSphericalMeasure(int dim, std::vector<Atom> atoms);

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }

  double total() const;
  bool even() const { return even_; }

  std::optional<std::size_t> find(const Direction& d) const;
  //! Mass of the atom at d, zero if there is none.
  double weight_at(const Direction& d) const;

  double integrate(const std::function<double(const Direction&)>& g) const;
  DiscreteSphericalMeasure scaled(double factor) const;

  std::vector<Direction> directions() const;
  std::vector<double> weights() const;

 private:
  int dim_;
  std::vector<Atom> atoms_;
  bool even_ = false;
};

/// Atomwise sum; atoms at matching directions are merged.
DiscreteSphericalMeasure operator+(const DiscreteSphericalMeasure& a, const DiscreteSphericalMeasure& b);

/// Largest atomwise difference after matching directions; unmatched atoms
/// are compared against zero.
double max_atom_discrepancy(const DiscreteSphericalMeasure& a, const DiscreteSphericalMeasure& b);

/// Sum of atomwise absolute differences after matching directions.
double l1_distance(const DiscreteSphericalMeasure& a, const DiscreteSphericalMeasure& b);

struct DualQuermassResult {
  double q = 0.0;
  double value = 0.0;       //!< (1/n) int rho^q du
  double normalized = 0.0;  //!< normalized q-th dual volume
};

/// Relative tolerance used for the facet and arc integrals behind every atom.
inline constexpr double kMeasureTolerance = 1e-13;

/*!
 * q-th dual curvature measure of a polytope: one atom per halfspace,
 *
 *   c_i = (h_i / n) int_{F_i} |x|^{q-n} dH^{n-1}(x),
 *
 * zero on inactive halfspaces. n = 3 integrates over the facets; n = 2 uses
 * exact arcs, c_i = (1/2) h_i^q int sec^q; n >= 4 is a Monte Carlo estimate.
 */
DiscreteSphericalMeasure dual_curvature(const HPolytope& body, double q);

/// Same measure computed on the sphere, c_i = (1/n) int_{cell i} rho^q du,
/// in polar coordinates about v_i with the radial part in closed form.
DiscreteSphericalMeasure dual_curvature_spherical(const HPolytope& body, double q);

/// C~_0: atom i is the spherical measure of cone cell i over n.
DiscreteSphericalMeasure dual_curvature_q0(const HPolytope& body);

/// (1/n) int rho^q du over the union of the given cells.
double dual_area(const HPolytope& body, double q, const std::vector<ConeCell>& region);
/// (1/n) int rho^q du over the whole sphere.
double dual_area(const SmoothBody& body, double q);

DiscreteSphericalMeasure cone_volume_measure(const HPolytope& body);
DiscreteSphericalMeasure surface_area_measure(const HPolytope& body);
DiscreteSphericalMeasure lp_surface_area_measure(const HPolytope& body, double p);

/// int g(rho(u)) du over S^{n-1}, integrated cell by cell so the integrand is
/// smooth on every piece. n in {2, 3}.
double polytope_sphere_integral(const HPolytope& body, const std::function<double(double)>& g);

/// Dual quermassintegral and normalized dual volume. Polytopes are summed cone
/// by cone; smooth bodies use the sphere rule.
DualQuermassResult dual_quermassintegral(const Body& body, double q);

struct SteinerFit {
  std::vector<double> t_samples;
  std::vector<double> fitted;  //!< index i holds W~_{n-i}, i = 0..n
  std::vector<double> direct;
  double max_relative_error = 0.0;
};

/// Least-squares fit of V(K +~ tB) = sum_i binom(n, i) W~_{n-i} t^{n-i}.
SteinerFit dual_steiner_check(const Body& body, const std::vector<double>& t_samples);

/// Density of C~_q(K, .) with respect to spherical Lebesgue measure at v:
/// (1/n) h |grad h|^{q-n} det(h_ij + h delta_ij). Requires q >= 0.
double dual_curvature_density_smooth(const SmoothBody& body, double q, const Direction& v);

/// Checks C~_q(K) + C~_q(L) = C~_q(K cap L) + C~_q(K cup L) for a convex
/// union; returns the largest atomwise discrepancy.
double valuation_check(const HPolytope& k, const HPolytope& l, double q);

}  // namespace dualcurve
