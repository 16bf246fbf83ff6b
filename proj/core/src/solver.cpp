#include "dualcurve/solver.hpp"

#include <algorithm>
#include <cmath>

#include "polyhedral.hpp"

namespace dualcurve {

namespace {

constexpr double kSpanTolerance = 1e-9;
constexpr double kMarginTolerance = 1e-12;

void require_even_nonzero(const DiscreteSphericalMeasure& mu) {
  if (!mu.even()) throw GeometryError(ErrorCode::InvalidArgument, "measure must be even");
  if (!(mu.total() > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "measure must have positive mass");
}

// For each atom, the index of the representative of its antipodal pair.
std::vector<std::size_t> pair_representatives(const DiscreteSphericalMeasure& mu, std::vector<std::size_t>& reps) {
  std::vector<std::size_t> rep_of(mu.size(), mu.size());
  reps.clear();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (rep_of[i] != mu.size()) continue;
    rep_of[i] = reps.size();
    if (const auto j = mu.find(-mu[i].dir)) rep_of[*j] = reps.size();
    reps.push_back(i);
  }
  return rep_of;
}

}  // namespace

double subspace_mass_bound(int n, int subspace_dim, double q) {
  if (q <= 1.0) return 1.0;
  const double inv_conjugate = (q - 1.0) / q;
  return 1.0 - (n - subspace_dim) * inv_conjugate / (n - 1);
}

SubspaceMassReport check_subspace_mass(const DiscreteSphericalMeasure& mu, double q) {
  require_even_nonzero(mu);
  const int n = mu.dim();
  if (!(q > 0.0) || q > n) throw GeometryError(ErrorCode::InvalidArgument, "q must lie in (0, n]");

  std::vector<std::size_t> reps;
  const auto rep_of = pair_representatives(mu, reps);
  std::vector<double> pair_mass(reps.size(), 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) pair_mass[rep_of[i]] += mu[i].weight;
  const double total = mu.total();

  SubspaceMassReport report;
  report.satisfied = true;
  report.worst_margin = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= n - 1; ++k) {
    detail::for_each_subset(static_cast<int>(reps.size()), k, [&](const std::vector<int>& subset) {
      Mat B(n, k);
      for (int c = 0; c < k; ++c) B.col(c) = mu[reps[subset[c]]].dir.coords();
      Eigen::ColPivHouseholderQR<Mat> qr(B);
      qr.setThreshold(1e-10);
      if (qr.rank() < k) return;
      const Mat Q = Mat(qr.householderQ()).leftCols(k);
      double mass = 0.0;
      for (std::size_t r = 0; r < reps.size(); ++r) {
        const Vec& x = mu[reps[r]].dir.coords();
        if ((x - Q * (Q.transpose() * x)).norm() <= kSpanTolerance) mass += pair_mass[r];
      }
      const double fraction = mass / total;
      const double bound = subspace_mass_bound(n, k, q);
      const double margin = bound - fraction;
      if (margin < report.worst_margin) {
        report.worst_margin = margin;
        report.worst_fraction = fraction;
        report.worst_bound = bound;
        report.worst_subspace.dim = k;
        report.worst_subspace.basis.clear();
        for (int c = 0; c < k; ++c) report.worst_subspace.basis.push_back(Direction::normalized(Q.col(c)));
      }
      if (margin <= kMarginTolerance) report.satisfied = false;
    });
  }
  // Atoms spanning less than R^n sit in a hyperplane that carries all the mass.
  if (report.worst_subspace.dim == 0) report.worst_margin = 1.0;
  return report;
}

double phi_mu(const Body& body, const DiscreteSphericalMeasure& mu, double q) {
  if (!(mu.total() > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "measure must have positive mass");
  const double total = mu.total();
  const double log_h = mu.integrate([&](const Direction& v) { return std::log(support(body, v)); });
  return -log_h / total + std::log(dual_quermassintegral(body, q).normalized);
}

std::vector<double> phi_gradient(const HPolytope& body, const DiscreteSphericalMeasure& mu, double q) {
  if (!(mu.total() > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "measure must have positive mass");
  const auto dirs = mu.directions();
  std::vector<double> h;
  for (const Direction& v : dirs) h.push_back(support(body, v));
  const HPolytope wulff = wulff_shape(dirs, h);
  const auto c = dual_curvature(wulff, q);
  const double w = c.total();
  std::vector<double> g(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) g[i] = -mu[i].weight / mu.total() + c[i].weight / w;
  return g;
}

namespace {

struct Evaluation {
  double phi = 0.0;
  double residual = 0.0;
  Vec pair_gradient;
  std::optional<HPolytope> body;
};

class LogFunctional {
 public:
  LogFunctional(const DiscreteSphericalMeasure& mu, double q)
      : mu_(mu), q_(q), total_(mu.total()), omega_(unit_ball_volume(mu.dim())) {
    rep_of_ = pair_representatives(mu, reps_);
    template_.emplace(wulff_shape(mu.directions(), std::vector<double>(mu.size(), 1.0)));
  }

  std::size_t pairs() const { return reps_.size(); }

  std::vector<double> offsets(const Vec& log_h) const {
    std::vector<double> h(mu_.size());
    for (std::size_t i = 0; i < mu_.size(); ++i) h[i] = std::exp(log_h(static_cast<int>(rep_of_[i])));
    return h;
  }

  Vec pair_logs(const std::vector<double>& atom_offsets) const {
    Vec s(static_cast<int>(reps_.size()));
    for (std::size_t p = 0; p < reps_.size(); ++p) s(static_cast<int>(p)) = std::log(atom_offsets[reps_[p]]);
    return s;
  }

  Evaluation operator()(const Vec& log_h) const {
    Evaluation e;
    const auto h = offsets(log_h);
    e.body.emplace(template_->with_offsets(h));
    const auto c = dual_curvature(*e.body, q_);
    const double w = c.total();
    double log_term = 0.0;
    for (std::size_t i = 0; i < mu_.size(); ++i) log_term += mu_[i].weight * log_h(static_cast<int>(rep_of_[i]));
    e.phi = -log_term / total_ + std::log(w / omega_) / q_;
    e.pair_gradient = Vec::Zero(static_cast<int>(reps_.size()));
    for (std::size_t i = 0; i < mu_.size(); ++i) {
      const double g = -mu_[i].weight / total_ + c[i].weight / w;
      e.pair_gradient(static_cast<int>(rep_of_[i])) += g;
      e.residual += std::abs(g);
    }
    return e;
  }

 private:
  const DiscreteSphericalMeasure& mu_;
  double q_;
  double total_;
  double omega_;
  std::vector<std::size_t> reps_;
  std::vector<std::size_t> rep_of_;
  std::optional<HPolytope> template_;
};

}  // namespace

SolverReport solve_dual_minkowski(const DiscreteSphericalMeasure& mu, const SolverConfig& cfg) {
  require_even_nonzero(mu);
  const int n = mu.dim();
  if (n != 2 && n != 3) throw GeometryError(ErrorCode::UnsupportedDimension, "solver supports n in {2, 3}");
  if (!(cfg.q > 0.0) || cfg.q > n) throw GeometryError(ErrorCode::InvalidArgument, "q must lie in (0, n]");
  if (!(cfg.tol > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (!(cfg.shrink > 0.0 && cfg.shrink < 1.0) || !(cfg.initial_step > 0.0) || !(cfg.armijo > 0.0 && cfg.armijo < 1.0)) {
    throw GeometryError(ErrorCode::InvalidArgument, "invalid line-search parameters");
  }

  SolverReport report;
  report.feasibility = check_subspace_mass(mu, cfg.q);
  report.feasible = report.feasibility.satisfied;
  if (!report.feasible) return report;

  const LogFunctional functional(mu, cfg.q);
  std::vector<double> start(mu.size(), 1.0);
  if (cfg.initial_offsets) {
    if (cfg.initial_offsets->size() != mu.size()) {
      throw GeometryError(ErrorCode::InvalidArgument, "initial offsets need one value per atom");
    }
    start = *cfg.initial_offsets;
    for (double h : start) {
      if (!(h > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "initial offsets must be positive");
    }
  }
  Vec s = functional.pair_logs(start);
  Evaluation current = functional(s);
  report.phi_trace.push_back(current.phi);
  report.residual_trace.push_back(current.residual);
  report.step_trace.push_back(0.0);

  const int m = static_cast<int>(functional.pairs());
  Mat inv_hessian = Mat::Identity(m, m);
  bool scaled = false;

  while (current.residual > cfg.tol && report.iterations < cfg.max_iter) {
    const Vec& g = current.pair_gradient;
    Vec d = inv_hessian * g;
    double slope = g.dot(d);
    if (!(slope > 0.0)) {
      inv_hessian.setIdentity();
      d = g;
      slope = g.dot(d);
    }
    double step = cfg.initial_step;
    const double longest = d.cwiseAbs().maxCoeff();
    if (step * longest > 1.0) step = 1.0 / longest;

    std::optional<Evaluation> accepted;
    Vec trial;
    while (step > 1e-20) {
      trial = s + step * d;
      Evaluation e = functional(trial);
      if (e.phi >= current.phi + cfg.armijo * step * slope) {
        accepted = std::move(e);
        break;
      }
      step *= cfg.shrink;
    }
    if (!accepted) break;

    // BFGS update of the inverse Hessian of -phi.
    const Vec sk = trial - s;
    const Vec yk = g - accepted->pair_gradient;
    const double sy = sk.dot(yk);
    if (sy > 1e-14 * sk.norm() * yk.norm()) {
      if (!scaled) {
        inv_hessian *= sy / yk.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Mat I = Mat::Identity(m, m);
      inv_hessian = (I - rho * sk * yk.transpose()) * inv_hessian * (I - rho * yk * sk.transpose()) +
                    rho * sk * sk.transpose();
    }

    s = trial;
    current = std::move(*accepted);
    ++report.iterations;
    report.phi_trace.push_back(current.phi);
    report.residual_trace.push_back(current.residual);
    report.step_trace.push_back(step);
  }

  // C~_q is homogeneous of degree q: scale so that the total mass matches.
  const HPolytope& shape = *current.body;
  const double lambda = std::pow(mu.total() / dual_curvature(shape, cfg.q).total(), 1.0 / cfg.q);
  report.body.emplace(shape.scaled(lambda));
  const auto c = dual_curvature(*report.body, cfg.q);
  double l1 = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) l1 += std::abs(c[i].weight - mu[i].weight);
  report.residual = l1 / mu.total();
  report.converged = report.residual <= cfg.tol;
  return report;
}

}  // namespace dualcurve
