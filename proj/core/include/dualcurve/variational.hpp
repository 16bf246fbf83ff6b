#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dualcurve/body.hpp"

namespace dualcurve {

/// Wulff shape of h_0 exp(t f) on the normals of base; f is indexed like the
/// halfspaces of base.
HPolytope log_wulff(const HPolytope& base, const std::vector<double>& f, double t);

/// Wulff shape of h_0 + t f on the normals of base.
HPolytope linear_wulff(const HPolytope& base, const std::vector<double>& f, double t);

/*!
 * Outcome of comparing a central difference against a variational formula.
 *
 * t_step is the step actually used: when a halfspace changes activity inside
 * the stencil the step is divided by ten (step_reductions counts how often).
 * error is |finite_difference - predicted| relative to |predicted|.
 */
struct VariationCheck {
  std::string formula;
  double q = 0.0;
  double t_step = 0.0;
  double finite_difference = 0.0;
  double predicted = 0.0;
  double error = 0.0;
  int step_reductions = 0;

  double residual() const { return finite_difference - predicted; }
};

inline constexpr double kDefaultVariationStep = 1e-4;

/// d/dt W~_{n-q}([K, f, t]) at 0 against q int f dC~_q(K, .). q != 0.
VariationCheck check_dual_variation(const HPolytope& body, const std::vector<double>& f, double q,
                                    double t_step = kDefaultVariationStep);

/// d/dt log V-bar_0([K, f, t]) at 0 against (1/omega_n) int f dC~_0(K, .).
VariationCheck check_q0_variation(const HPolytope& body, const std::vector<double>& f,
                                  double t_step = kDefaultVariationStep);

/// d/dt V([h_K + t f]) at 0 against int f dS(K, .).
VariationCheck check_aleksandrov(const HPolytope& body, const std::vector<double>& f,
                                 double t_step = kDefaultVariationStep);

struct DecayCheck {
  double t = 0.0;
  double residual_full = 0.0;
  double residual_half = 0.0;
  double ratio = 0.0;  //!< residual_full / residual_half, about 4 for second order
};

/// Runs check at t and t/2 and reports how the central-difference residual
/// shrinks.
DecayCheck second_order_decay(const std::function<VariationCheck(double)>& check, double t);

}  // namespace dualcurve
