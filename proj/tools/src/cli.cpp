#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include <dualcurve/dualcurve.hpp>

namespace dualcurve::cli {

namespace {

using nlohmann::json;

// Rounded to 12 significant digits so that dump() prints at most that many.
double num(double x) { return std::isfinite(x) ? std::stod(format_number(x)) : x; }

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

json measure_report(const DiscreteSphericalMeasure& mu) {
  json atoms = json::array();
  for (const Atom& a : mu.atoms()) atoms.push_back({{"dir", vec_json(a.dir.coords())}, {"weight", num(a.weight)}});
  return {{"dim", mu.dim()}, {"even", mu.even()}, {"atoms", atoms}};
}

HPolytope as_hpolytope(const Body& body) {
  if (const auto* h = std::get_if<HPolytope>(&body)) return *h;
  if (const auto* v = std::get_if<VPolytope>(&body)) return v->to_hpolytope();
  throw GeometryError(ErrorCode::InvalidArgument, "this command needs a polytope");
}

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  json extra = json::object();

  bool pass() const { return std::isfinite(value) && value <= bound; }

  json to_json() const {
    json j = {{"name", name}, {"value", num(value)}, {"bound", bound}, {"pass", pass()}};
    j.update(extra);
    return j;
  }
};

json variation_json(const VariationCheck& c) {
  return {{"formula", c.formula}, {"q", c.q}, {"error", num(c.error)}, {"t_step", c.t_step}};
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<Check> identities_suite(const HPolytope& p) {
  const int n = p.dim();
  std::vector<Check> checks;
  std::vector<double> qs = {0.0, 0.5, 1.0, 2.0, static_cast<double>(n)};
  for (double q : qs) {
    const double total = q == 0.0 ? dual_curvature_q0(p).total() : dual_curvature(p, q).total();
    const double w = q == 0.0 ? unit_ball_volume(n) : dual_quermassintegral(p, q).value;
    checks.push_back({"total_measure_q" + format_number(q), relative(total, w), 1e-6});
  }
  const auto cv = cone_volume_measure(p);
  const auto cn = dual_curvature(p, n);
  double cone = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (cv[i].weight > 0.0) cone = std::max(cone, relative(cn[i].weight, cv[i].weight));
  }
  checks.push_back({"cone_volume", cone, 1e-8});
  checks.push_back({"cone_volume_total", relative(cv.total(), p.volume()), 1e-10});
  double cells = 0.0;
  for (const ConeCell& c : cone_partition(p)) cells += cell_measure(p, c);
  checks.push_back({"cell_cover", relative(cells, sphere_area(n)), n == 2 ? 1e-8 : 1e-6});
  checks.push_back({"polarity", wulff_polar_identity_check(p.normals(), p.offsets()).max_discrepancy, 1e-9});
  double homog = 0.0;
  for (double lambda : {0.5, 2.0}) {
    for (double q : {0.5, 1.0, 2.0}) {
      const auto a = dual_curvature(p.scaled(lambda), q);
      const auto b = dual_curvature(p, q);
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (b[i].weight > 0.0) homog = std::max(homog, relative(a[i].weight, std::pow(lambda, q) * b[i].weight));
      }
    }
  }
  checks.push_back({"homogeneity", homog, 1e-8});
  return checks;
}

std::vector<Check> variational_suite(const HPolytope& p, std::mt19937_64& rng) {
  const int n = p.dim();
  std::vector<Check> checks;
  const auto f = random_even_values(p, rng, -1.0, 1.0);
  for (double q : {0.5, 1.0, 2.0, static_cast<double>(n)}) {
    const auto c = check_dual_variation(p, f, q);
    checks.push_back({"dual_variation_q" + format_number(q), c.error, 1e-3, variation_json(c)});
  }
  const auto c0 = check_q0_variation(p, f);
  checks.push_back({"q0_variation", c0.error, 1e-3, variation_json(c0)});
  const auto ca = check_aleksandrov(p, f);
  checks.push_back({"aleksandrov", ca.error, 1e-3, variation_json(ca)});
  const auto decay = second_order_decay([&](double t) { return check_dual_variation(p, f, 1.0, t); }, 1e-2);
  checks.push_back({"second_order_decay", std::abs(decay.ratio - 4.0), 0.5, {{"ratio", num(decay.ratio)}}});
  return checks;
}

std::vector<Check> valuation_suite(const HPolytope& p, std::mt19937_64& rng) {
  const int n = p.dim();
  std::vector<Check> checks;
  for (double q : {0.5, 1.0, 2.0, static_cast<double>(n)}) {
    checks.push_back({"self_q" + format_number(q), valuation_check(p, p, q), 1e-12});
    checks.push_back({"nested_q" + format_number(q), valuation_check(p, p.scaled(1.25), q), 1e-12});
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const auto [a, b] = random_box_pair(n, rng);
      worst = std::max(worst, valuation_check(a, b, q));
    }
    checks.push_back({"box_pairs_q" + format_number(q), worst, 1e-5});
  }
  return checks;
}

std::vector<Check> steiner_suite(const Body& body) {
  const auto fit = dual_steiner_check(body, {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0});
  json coeffs = json::array();
  for (double w : fit.fitted) coeffs.push_back(num(w));
  return {{"steiner_coefficients", fit.max_relative_error, 1e-4, {{"fitted", coeffs}}}};
}

void write_trace(const std::string& path, const SolverReport& r) {
  std::ofstream out(path);
  if (!out) throw GeometryError(ErrorCode::InvalidArgument, "cannot write " + path);
  out << "iter,phi,residual,step\n";
  for (std::size_t i = 0; i < r.phi_trace.size(); ++i) {
    out << i << ',' << format_number(r.phi_trace[i]) << ',' << format_number(r.residual_trace[i]) << ','
        << format_number(r.step_trace[i]) << '\n';
  }
}

json subspace_json(const SubspaceMassReport& s) {
  json basis = json::array();
  for (const Direction& d : s.worst_subspace.basis) basis.push_back(vec_json(d.coords()));
  return {{"satisfied", s.satisfied},
          {"worst_fraction", num(s.worst_fraction)},
          {"worst_bound", num(s.worst_bound)},
          {"subspace_dim", s.worst_subspace.dim},
          {"basis", basis}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual curvature measures and the dual Minkowski problem", "dualcurve"};
  app.require_subcommand(1);

  std::string body_path, measure_path, out_path, trace_path, kind, suite;
  double q = 0.0, p = 1.0, tol = 1e-6;
  int max_iter = 10000, dim = 3, pairs = 6;
  std::uint64_t seed = 0;
  bool random_body = false;

  auto* compute = app.add_subcommand("compute", "Compute a measure of a polytope");
  compute->add_option("body", body_path, "Body JSON file")->required()->check(CLI::ExistingFile);
  auto* compute_q = compute->add_option("--q", q, "Index of the dual curvature measure");
  compute->add_option("--measure-kind", kind, "Measure to compute")
      ->check(CLI::IsMember({"dual", "cone", "surface", "lp", "q0"}));
  auto* compute_p = compute->add_option("--p", p, "Exponent of the Lp surface area measure");
  compute->add_option("--out", out_path, "Write the measure to this file");

  auto* solve = app.add_subcommand("solve", "Solve the dual Minkowski problem for a discrete even measure");
  solve->add_option("--measure", measure_path, "Measure JSON file")->required()->check(CLI::ExistingFile);
  solve->add_option("--q", q, "Index q in (0, n]")->required();
  solve->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  solve->add_option("--out", out_path, "Write the recovered body to this file");
  solve->add_option("--trace", trace_path, "Write iter,phi,residual,step to this CSV file");

  auto* smi = app.add_subcommand("check-smi", "Test the subspace mass inequality");
  smi->add_option("--measure", measure_path, "Measure JSON file")->required()->check(CLI::ExistingFile);
  smi->add_option("--q", q, "Index q in (0, n]")->required();

  auto* verify = app.add_subcommand("verify", "Run a numerical identity suite");
  verify->add_option("body", body_path, "Body JSON file")->check(CLI::ExistingFile);
  verify->add_option("--suite", suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"identities", "variational", "valuation", "steiner"}));
  verify->add_option("--seed", seed, "Seed for randomized inputs");
  verify->add_flag("--random", random_body, "Use a random symmetric polytope instead of a body file");
  verify->add_option("--dim", dim, "Dimension of the random polytope")->check(CLI::Range(2, 3));
  verify->add_option("--pairs", pairs, "Facet pairs of the random polytope")->check(CLI::Range(2, 30));

  auto* steiner = app.add_subcommand("steiner", "Fit the dual Steiner polynomial");
  steiner->add_option("body", body_path, "Body JSON file")->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInvalid;
  }

  try {
    if (compute->parsed()) {
      const bool has_q = compute_q->count() > 0;
      if (kind.empty()) kind = has_q ? "dual" : "";
      if (kind.empty()) throw GeometryError(ErrorCode::InvalidArgument, "give --q or --measure-kind");
      if (kind == "dual" && !has_q) throw GeometryError(ErrorCode::InvalidArgument, "--measure-kind dual needs --q");
      if (kind != "dual" && has_q) throw GeometryError(ErrorCode::InvalidArgument, "--q only applies to dual");
      if (kind == "lp" && compute_p->count() == 0) throw GeometryError(ErrorCode::InvalidArgument, "lp needs --p");
      const HPolytope body = as_hpolytope(load_body(body_path));
      std::optional<DiscreteSphericalMeasure> mu;
      if (kind == "dual") mu.emplace(q == 0.0 ? dual_curvature_q0(body) : dual_curvature(body, q));
      if (kind == "cone") mu.emplace(cone_volume_measure(body));
      if (kind == "surface") mu.emplace(surface_area_measure(body));
      if (kind == "lp") mu.emplace(lp_surface_area_measure(body, p));
      if (kind == "q0") mu.emplace(dual_curvature_q0(body));
      if (!out_path.empty()) save_measure(out_path, *mu);
      out << measure_report(*mu).dump(2) << '\n';
      return kOk;
    }

    if (solve->parsed()) {
      const auto mu = load_measure(measure_path);
      SolverConfig cfg;
      cfg.q = q;
      cfg.tol = tol;
      cfg.max_iter = max_iter;
      const SolverReport r = solve_dual_minkowski(mu, cfg);
      json report = {{"feasible", r.feasible},
                     {"converged", r.converged},
                     {"iterations", r.iterations},
                     {"residual", num(r.residual)},
                     {"subspace_mass", subspace_json(r.feasibility)}};
      if (r.body) {
        report["offsets"] = json::array();
        for (double h : r.body->offsets()) report["offsets"].push_back(num(h));
        if (!out_path.empty()) save_body(out_path, *r.body);
      }
      if (!trace_path.empty()) write_trace(trace_path, r);
      out << report.dump(2) << '\n';
      if (!r.feasible) {
        err << "measure violates the subspace mass inequality\n";
        return kInfeasible;
      }
      if (!r.converged) {
        err << "no convergence within " << max_iter << " iterations\n";
        return kNotConverged;
      }
      return kOk;
    }

    if (smi->parsed()) {
      const auto r = check_subspace_mass(load_measure(measure_path), q);
      out << subspace_json(r).dump(2) << '\n';
      return r.satisfied ? kOk : kInfeasible;
    }

    if (verify->parsed()) {
      if (random_body == !body_path.empty()) {
        throw GeometryError(ErrorCode::InvalidArgument, "give either a body file or --random");
      }
      std::mt19937_64 rng(seed);
      const Body body = random_body ? Body(random_symmetric_polytope(dim, pairs, rng)) : load_body(body_path);
      std::vector<Check> checks;
      if (suite == "steiner") {
        checks = steiner_suite(body);
      } else {
        const HPolytope poly = as_hpolytope(body);
        if (suite == "identities") checks = identities_suite(poly);
        if (suite == "variational") checks = variational_suite(poly, rng);
        if (suite == "valuation") checks = valuation_suite(poly, rng);
      }
      json report = {{"suite", suite}, {"seed", seed}, {"checks", json::array()}};
      bool all = true;
      for (const Check& c : checks) {
        report["checks"].push_back(c.to_json());
        all = all && c.pass();
      }
      report["pass"] = all;
      out << report.dump(2) << '\n';
      return all ? kOk : kCheckFailed;
    }

    if (steiner->parsed()) {
      const Body body = load_body(body_path);
      const auto fit = dual_steiner_check(body, {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0});
      json fitted = json::array(), direct = json::array();
      for (double w : fit.fitted) fitted.push_back(num(w));
      for (double w : fit.direct) direct.push_back(num(w));
      out << json{{"fitted", fitted}, {"direct", direct}, {"max_relative_error", num(fit.max_relative_error)}}.dump(2)
          << '\n';
      return kOk;
    }
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Infeasible ? kInfeasible : kInvalid;
  }
  return kInvalid;
}

}  // namespace dualcurve::cli
