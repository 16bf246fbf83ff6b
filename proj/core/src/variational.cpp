#include "dualcurve/variational.hpp"

#include <cmath>

#include "dualcurve/measures.hpp"

namespace dualcurve {

namespace {

constexpr int kMaxStepReductions = 6;

void require_table(const HPolytope& base, const std::vector<double>& f) {
  if (f.size() != base.size()) {
    throw GeometryError(ErrorCode::InvalidArgument, "perturbation must have one value per halfspace");
  }
}

bool same_activity(const HPolytope& a, const HPolytope& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.is_active(i) != b.is_active(i)) return false;
    if (a.facet_vertex_ids(i).size() != b.facet_vertex_ids(i).size()) return false;
  }
  return a.vertices().size() == b.vertices().size();
}

// Central difference of value(family(t)) with the step shrunk until the
// combinatorial type is constant across the stencil.
template <typename Family, typename Value>
void central_difference(const HPolytope& body, Family&& family, Value&& value, double t_step, VariationCheck& out) {
  if (!(t_step > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "step must be positive");
  double t = t_step;
  int reductions = 0;
  for (;;) {
    const HPolytope plus = family(t);
    const HPolytope minus = family(-t);
    if ((same_activity(body, plus) && same_activity(body, minus)) || reductions >= kMaxStepReductions) {
      out.finite_difference = (value(plus) - value(minus)) / (2.0 * t);
      break;
    }
    t /= 10.0;
    ++reductions;
  }
  out.t_step = t;
  out.step_reductions = reductions;
}

void finish(VariationCheck& out, double reference) {
  const double denom = std::max(std::abs(out.predicted), 1e-12 * std::abs(reference));
  out.error = denom > 0.0 ? std::abs(out.finite_difference - out.predicted) / denom
                          : std::abs(out.finite_difference - out.predicted);
}

}  // namespace

HPolytope log_wulff(const HPolytope& base, const std::vector<double>& f, double t) {
  require_table(base, f);
  std::vector<double> h = base.offsets();
  for (std::size_t i = 0; i < h.size(); ++i) h[i] *= std::exp(t * f[i]);
  return base.with_offsets(std::move(h));
}

HPolytope linear_wulff(const HPolytope& base, const std::vector<double>& f, double t) {
  require_table(base, f);
  std::vector<double> h = base.offsets();
  for (std::size_t i = 0; i < h.size(); ++i) h[i] += t * f[i];
  return base.with_offsets(std::move(h));
}

VariationCheck check_dual_variation(const HPolytope& body, const std::vector<double>& f, double q, double t_step) {
  require_table(body, f);
  if (q == 0.0) throw GeometryError(ErrorCode::InvalidArgument, "use check_q0_variation for q = 0");
  VariationCheck out;
  out.formula = "dual_quermassintegral_variation";
  out.q = q;
  central_difference(
      body, [&](double t) { return log_wulff(body, f, t); },
      [&](const HPolytope& p) { return dual_quermassintegral(p, q).value; }, t_step, out);
  const auto c = dual_curvature(body, q);
  double pairing = 0.0;
  for (std::size_t i = 0; i < body.size(); ++i) pairing += f[i] * c[i].weight;
  out.predicted = q * pairing;
  finish(out, c.total());
  return out;
}

VariationCheck check_q0_variation(const HPolytope& body, const std::vector<double>& f, double t_step) {
  require_table(body, f);
  VariationCheck out;
  out.formula = "log_normalized_dual_volume_q0_variation";
  out.q = 0.0;
  central_difference(
      body, [&](double t) { return log_wulff(body, f, t); },
      [&](const HPolytope& p) { return std::log(dual_quermassintegral(p, 0.0).normalized); }, t_step, out);
  const auto c = dual_curvature_q0(body);
  double pairing = 0.0;
  for (std::size_t i = 0; i < body.size(); ++i) pairing += f[i] * c[i].weight;
  out.predicted = pairing / unit_ball_volume(body.dim());
  finish(out, 1.0);
  return out;
}

VariationCheck check_aleksandrov(const HPolytope& body, const std::vector<double>& f, double t_step) {
  require_table(body, f);
  VariationCheck out;
  out.formula = "aleksandrov_volume_variation";
  out.q = static_cast<double>(body.dim());
  central_difference(
      body, [&](double t) { return linear_wulff(body, f, t); }, [](const HPolytope& p) { return p.volume(); }, t_step,
      out);
  double pairing = 0.0;
  for (std::size_t i = 0; i < body.size(); ++i) pairing += f[i] * body.facet_area(i);
  out.predicted = pairing;
  finish(out, body.volume());
  return out;
}

DecayCheck second_order_decay(const std::function<VariationCheck(double)>& check, double t) {
  DecayCheck d;
  const VariationCheck full = check(t);
  d.t = full.t_step;
  const VariationCheck half = check(0.5 * d.t);
  d.residual_full = std::abs(full.residual());
  d.residual_half = std::abs(half.residual());
  d.ratio = d.residual_half > 0.0 ? d.residual_full / d.residual_half : 0.0;
  return d;
}

}  // namespace dualcurve
