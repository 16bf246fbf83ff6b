#pragma once

#include <optional>
#include <vector>

#include "dualcurve/body.hpp"
#include "dualcurve/measures.hpp"

namespace dualcurve {

/// A linear subspace given by an orthonormal basis.
struct SubspaceQuery {
  std::vector<Direction> basis;
  int dim = 0;
};

/*!
 * Result of the q-th subspace mass inequality test.
 *
 * The worst subspace is the one with the smallest margin bound - fraction;
 * the inequality holds when every margin is strictly positive.
 */
struct SubspaceMassReport {
  bool satisfied = false;
  double worst_fraction = 0.0;
  double worst_bound = 1.0;
  double worst_margin = 1.0;
  SubspaceQuery worst_subspace;
};

/// Upper bound on mu(S cap xi) / |mu| for a subspace xi of the given
/// dimension: 1 - (n - dim) / ((n - 1) q') with q' = q / (q - 1) for q > 1,
/// and 1 for q in (0, 1].
double subspace_mass_bound(int n, int subspace_dim, double q);

/// Checks the inequality over every subspace spanned by atoms of mu. mu must
/// be even with positive total mass and q in (0, n].
SubspaceMassReport check_subspace_mass(const DiscreteSphericalMeasure& mu, double q);

/// -(1/|mu|) int log h_K dmu + log V-bar_q(K).
double phi_mu(const Body& body, const DiscreteSphericalMeasure& mu, double q);

/*!
 * Gradient of the functional in log h on the atom directions of mu:
 * component i is -gamma_i / |mu| + c_i / W~_{n-q}, where c are the dual
 * curvature atoms of the Wulff shape of h_K on the atom directions.
 * Halfspaces that do not touch a facet contribute c_i = 0.
 */
std::vector<double> phi_gradient(const HPolytope& body, const DiscreteSphericalMeasure& mu, double q);

struct SolverConfig {
  double q = 1.0;
  double tol = 1e-6;
  int max_iter = 10000;
  double initial_step = 1.0;
  double shrink = 0.5;
  double armijo = 1e-4;
  //! Starting offsets, one per atom of mu; defaults to all ones (unit ball).
  std::optional<std::vector<double>> initial_offsets;
};

/*!
 * Outcome of solve_dual_minkowski.
 *
 * phi_trace[k], residual_trace[k] and step_trace[k] describe iterate k
 * (k = 0 is the start, step 0). residual is the normalized L1 distance
 * sum |c_i - gamma_i| / |mu| recomputed from scratch on the returned body.
 */
struct SolverReport {
  std::optional<HPolytope> body;
  double residual = 0.0;
  std::vector<double> phi_trace;
  std::vector<double> residual_trace;
  std::vector<double> step_trace;
  int iterations = 0;
  bool feasible = false;
  bool converged = false;
  SubspaceMassReport feasibility;
};

/// Maximizes the functional over origin-symmetric Wulff shapes on the atom
/// directions of mu (quasi-Newton ascent in log h with Armijo backtracking)
/// and rescales the maximizer so that C~_q(K, .) = mu. n in {2, 3}.
SolverReport solve_dual_minkowski(const DiscreteSphericalMeasure& mu, const SolverConfig& cfg);

}  // namespace dualcurve
