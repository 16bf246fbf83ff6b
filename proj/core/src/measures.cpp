#include "dualcurve/measures.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "dualcurve/parallel.hpp"
#include "dualcurve/quadrature.hpp"

namespace dualcurve {

// --- DiscreteSphericalMeasure ----------------------------------------------------

DiscreteSphericalMeasure::DiscreteSphericalMeasure(int dim, std::vector<Atom> atoms)
    : dim_(dim), atoms_(std::move(atoms)) {
  if (dim < 2) throw GeometryError(ErrorCode::InvalidArgument, "dimension must be at least 2");
  double wmax = 0.0;
  for (const Atom& a : atoms_) {
    if (a.dir.dim() != dim) throw GeometryError(ErrorCode::InvalidArgument, "atom direction has wrong dimension");
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
      throw GeometryError(ErrorCode::InvalidArgument, "atom weights must be finite and nonnegative");
    }
    wmax = std::max(wmax, a.weight);
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
      if (atoms_[i].dir.angle_to(atoms_[j].dir) <= kAngleTolerance) {
        throw GeometryError(ErrorCode::InvalidArgument, "atom directions must be pairwise distinct");
      }
    }
  }
  even_ = true;
  for (const Atom& a : atoms_) {
    const auto j = find(-a.dir);
    if (!j || std::abs(atoms_[*j].weight - a.weight) > kEvenTolerance * std::max(wmax, 1e-300)) {
      even_ = false;
      break;
    }
  }
}

double DiscreteSphericalMeasure::total() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.weight;
  return s;
}

std::optional<std::size_t> DiscreteSphericalMeasure::find(const Direction& d) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].dir.angle_to(d) <= kAngleTolerance) return i;
  }
  return std::nullopt;
}

double DiscreteSphericalMeasure::weight_at(const Direction& d) const {
  const auto i = find(d);
  return i ? atoms_[*i].weight : 0.0;
}

double DiscreteSphericalMeasure::integrate(const std::function<double(const Direction&)>& g) const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.weight * g(a.dir);
  return s;
}

DiscreteSphericalMeasure DiscreteSphericalMeasure::scaled(double factor) const {
  std::vector<Atom> atoms = atoms_;
  for (Atom& a : atoms) a.weight *= factor;
  return DiscreteSphericalMeasure(dim_, std::move(atoms));
}

std::vector<Direction> DiscreteSphericalMeasure::directions() const {
  std::vector<Direction> dirs;
  for (const Atom& a : atoms_) dirs.push_back(a.dir);
  return dirs;
}

std::vector<double> DiscreteSphericalMeasure::weights() const {
  std::vector<double> w;
  for (const Atom& a : atoms_) w.push_back(a.weight);
  return w;
}

DiscreteSphericalMeasure operator+(const DiscreteSphericalMeasure& a, const DiscreteSphericalMeasure& b) {
  if (a.dim() != b.dim()) throw GeometryError(ErrorCode::InvalidArgument, "measures live on different spheres");
  std::vector<Atom> atoms = a.atoms();
  for (const Atom& x : b.atoms()) {
    if (const auto i = a.find(x.dir)) {
      atoms[*i].weight += x.weight;
    } else {
      atoms.push_back(x);
    }
  }
  return DiscreteSphericalMeasure(a.dim(), std::move(atoms));
}

namespace {

template <typename Accumulate>
void matched_differences(const DiscreteSphericalMeasure& a, const DiscreteSphericalMeasure& b, Accumulate&& acc) {
  for (const Atom& x : a.atoms()) acc(std::abs(x.weight - b.weight_at(x.dir)));
  for (const Atom& y : b.atoms()) {
    if (!a.find(y.dir)) acc(std::abs(y.weight));
  }
}

}  // namespace

double max_atom_discrepancy(const DiscreteSphericalMeasure& a, const DiscreteSphericalMeasure& b) {
  double worst = 0.0;
  matched_differences(a, b, [&](double d) { worst = std::max(worst, d); });
  return worst;
}

double l1_distance(const DiscreteSphericalMeasure& a, const DiscreteSphericalMeasure& b) {
  double sum = 0.0;
  matched_differences(a, b, [&](double d) { sum += d; });
  return sum;
}

// --- cone geometry -------------------------------------------------------------

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double integrate_rel(const std::function<double(double)>& f, double lo, double hi, double rel) {
  if (lo == hi) return 0.0;
  return GK::integrate(f, lo, hi, 12, rel);
}

// Angles, measured from the normal, of the two endpoints of edge i of a polygon.
std::pair<double, double> arc_angles(const HPolytope& body, std::size_t i) {
  const Vec& v = body.normal(i).coords();
  const Eigen::Vector2d t(-v(1), v(0));
  const auto pts = body.facet_points(i);
  const auto angle = [&](const Vec& x) { return std::atan2(t.dot(x), v.dot(x)); };
  return {angle(pts.front()), angle(pts.back())};
}

// Triangle (foot, A, B) of a facet fan about the foot point h_i v_i, in polar
// coordinates of the facet plane. The ray at angle theta leaves the triangle
// at distance dist / cos(theta - theta_normal).
struct PolarEdge {
  double theta0 = 0.0;
  double sweep = 0.0;
  double dist = 0.0;
  double theta_normal = 0.0;

  double reach(double s) const { return dist / std::cos(theta0 + s * sweep - theta_normal); }
};

std::vector<PolarEdge> polar_edges(const HPolytope& body, std::size_t i) {
  const Direction& v = body.normal(i);
  const Vec foot = body.offset(i) * v.coords();
  const Mat frame = SmoothBody::tangent_frame(v);
  const Eigen::Vector3d e1 = frame.col(0);
  const Eigen::Vector3d e2 = Eigen::Vector3d(v.coords()).cross(e1);
  std::vector<Eigen::Vector2d> poly;
  double scale = 0.0;
  for (const Vec& x : body.facet_points(i)) {
    const Eigen::Vector3d d = x - foot;
    poly.emplace_back(d.dot(e1), d.dot(e2));
    scale = std::max(scale, d.norm());
  }
  std::vector<PolarEdge> edges;
  const double tiny = 1e-14 * std::max(scale, body.offset(i));
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Eigen::Vector2d a = poly[k], b = poly[(k + 1) % poly.size()];
    const double cross = a.x() * b.y() - a.y() * b.x();
    const Eigen::Vector2d ab = b - a;
    if (a.norm() <= tiny || b.norm() <= tiny || std::abs(cross) <= tiny * ab.norm()) continue;
    const Eigen::Vector2d nearest = a - (a.dot(ab) / ab.squaredNorm()) * ab;
    edges.push_back({std::atan2(a.y(), a.x()), std::atan2(cross, a.dot(b)), nearest.norm(),
                     std::atan2(nearest.y(), nearest.x())});
  }
  return edges;
}

// int_0^Psi rho^q sin(psi) dpsi with rho = h / cos(psi) and tan(Psi) = r / h.
double radial_power_integral(double h, double r, double q) {
  const double log_cos = -0.5 * std::log1p((r / h) * (r / h));
  const double hq = std::pow(h, q);
  if (std::abs(1.0 - q) < 1e-12) return -hq * log_cos;
  return -hq * std::expm1((1.0 - q) * log_cos) / (1.0 - q);
}

double spherical_atom(const HPolytope& body, std::size_t i, double q) {
  if (!body.is_active(i)) return 0.0;
  const int n = body.dim();
  const double h = body.offset(i);
  if (n == 2) {
    const auto [lo, hi] = arc_angles(body, i);
    if (q == 0.0) return 0.5 * (hi - lo);
    const double hq = std::pow(h, q);
    return 0.5 * hq * integrate_rel([q](double th) { return std::pow(std::cos(th), -q); }, lo, hi, kMeasureTolerance);
  }
  double sum = 0.0;
  for (const PolarEdge& e : polar_edges(body, i)) {
    sum += e.sweep * integrate_rel([&](double s) { return radial_power_integral(h, e.reach(s), q); }, 0.0, 1.0,
                                   kMeasureTolerance);
  }
  return sum / n;
}

double facet_atom(const HPolytope& body, std::size_t i, double q) {
  if (!body.is_active(i)) return 0.0;
  const int n = body.dim();
  if (n == 2) return spherical_atom(body, i, q);
  const double h = body.offset(i);
  const double expo = 0.5 * (q - n);
  const double integral =
      facet_integral(body.facet_points(i), [expo](const Vec& x) { return std::pow(x.squaredNorm(), expo); },
                     kMeasureTolerance);
  return h * integral / n;
}

std::vector<double> monte_carlo_atoms(const HPolytope& body, const std::function<double(double)>& g) {
  const int n = body.dim();
  const SphereQuadrature rule = sphere_rule(n, default_sphere_level(n));
  std::vector<double> atoms(body.size(), 0.0);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const Direction& u = rule.nodes[j];
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const double c = u.dot(body.normal(i));
      if (c > 0.0 && body.offset(i) / c < best) {
        best = body.offset(i) / c;
        arg = i;
      }
    }
    atoms[arg] += rule.weights[j] * g(best) / n;
  }
  return atoms;
}

DiscreteSphericalMeasure atoms_to_measure(const HPolytope& body, const std::vector<double>& weights) {
  std::vector<Atom> atoms;
  atoms.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) atoms.push_back({body.normal(i), weights[i]});
  return DiscreteSphericalMeasure(body.dim(), std::move(atoms));
}

DiscreteSphericalMeasure per_facet(const HPolytope& body, const std::function<double(std::size_t)>& atom) {
  std::vector<double> w(body.size(), 0.0);
  parallel_for(body.size(), [&](std::size_t i) { w[i] = atom(i); });
  return atoms_to_measure(body, w);
}

}  // namespace

DiscreteSphericalMeasure dual_curvature(const HPolytope& body, double q) {
  if (!std::isfinite(q)) throw GeometryError(ErrorCode::InvalidArgument, "q must be finite");
  if (body.dim() > 3) {
    return atoms_to_measure(body, monte_carlo_atoms(body, [q](double r) { return std::pow(r, q); }));
  }
  return per_facet(body, [&](std::size_t i) { return facet_atom(body, i, q); });
}

DiscreteSphericalMeasure dual_curvature_spherical(const HPolytope& body, double q) {
  if (!std::isfinite(q)) throw GeometryError(ErrorCode::InvalidArgument, "q must be finite");
  if (body.dim() > 3) return dual_curvature(body, q);
  return per_facet(body, [&](std::size_t i) { return spherical_atom(body, i, q); });
}

DiscreteSphericalMeasure dual_curvature_q0(const HPolytope& body) {
  const auto cells = cone_partition(body);
  const int n = body.dim();
  return per_facet(body, [&](std::size_t i) { return cell_measure(body, cells[i]) / n; });
}

double dual_area(const HPolytope& body, double q, const std::vector<ConeCell>& region) {
  double sum = 0.0;
  for (const ConeCell& cell : region) {
    if (cell.facet_index >= body.size()) throw GeometryError(ErrorCode::InvalidArgument, "cell does not belong to body");
    sum += spherical_atom(body, cell.facet_index, q);
  }
  return sum;
}

double dual_area(const SmoothBody& body, double q) {
  const int n = body.dim();
  const SphereQuadrature rule = sphere_rule(n, default_sphere_level(n));
  return rule.integrate([&](const Direction& u) { return std::pow(body.radial(u), q); }) / n;
}

DiscreteSphericalMeasure cone_volume_measure(const HPolytope& body) {
  const int n = body.dim();
  return per_facet(body, [&](std::size_t i) { return body.offset(i) * body.facet_area(i) / n; });
}

DiscreteSphericalMeasure surface_area_measure(const HPolytope& body) {
  return per_facet(body, [&](std::size_t i) { return body.facet_area(i); });
}

DiscreteSphericalMeasure lp_surface_area_measure(const HPolytope& body, double p) {
  return per_facet(body, [&](std::size_t i) { return std::pow(body.offset(i), 1.0 - p) * body.facet_area(i); });
}

double polytope_sphere_integral(const HPolytope& body, const std::function<double(double)>& g) {
  const int n = body.dim();
  if (n > 3) throw GeometryError(ErrorCode::UnsupportedDimension, "cellwise sphere integrals need n <= 3");
  std::vector<double> parts(body.size(), 0.0);
  parallel_for(body.size(), [&](std::size_t i) {
    if (!body.is_active(i)) return;
    const double h = body.offset(i);
    if (n == 2) {
      const auto [lo, hi] = arc_angles(body, i);
      parts[i] = integrate_rel([&](double th) { return g(h / std::cos(th)); }, lo, hi, 1e-12);
      return;
    }
    double sum = 0.0;
    for (const PolarEdge& e : polar_edges(body, i)) {
      const auto inner = [&](double s) {
        const double psi_max = std::atan(e.reach(s) / h);
        return integrate_rel([&](double psi) { return g(h / std::cos(psi)) * std::sin(psi); }, 0.0, psi_max, 1e-12);
      };
      sum += e.sweep * integrate_rel(inner, 0.0, 1.0, 1e-12);
    }
    parts[i] = sum;
  });
  double total = 0.0;
  for (double p : parts) total += p;
  return total;
}

namespace {

DualQuermassResult finish_quermass(int n, double q, double value, const std::function<double()>& log_integral) {
  DualQuermassResult r;
  r.q = q;
  r.value = value;
  const double omega = unit_ball_volume(n);
  if (q == 0.0) {
    r.normalized = std::exp(log_integral() / (n * omega));
  } else {
    r.normalized = std::pow(value / omega, 1.0 / q);
  }
  return r;
}

DualQuermassResult quermass_polytope(const HPolytope& p, double q) {
  const int n = p.dim();
  const double value = dual_curvature_spherical(p, q).total();
  return finish_quermass(n, q, value, [&] {
    if (n > 3) {
      double s = 0.0;
      for (double a : monte_carlo_atoms(p, [](double r) { return std::log(r); })) s += a;
      return s * n;
    }
    return polytope_sphere_integral(p, [](double r) { return std::log(r); });
  });
}

}  // namespace

DualQuermassResult dual_quermassintegral(const Body& body, double q) {
  if (!std::isfinite(q)) throw GeometryError(ErrorCode::InvalidArgument, "q must be finite");
  if (const auto* h = std::get_if<HPolytope>(&body)) return quermass_polytope(*h, q);
  if (const auto* v = std::get_if<VPolytope>(&body)) return quermass_polytope(v->to_hpolytope(), q);
  const auto& s = std::get<SmoothBody>(body);
  const int n = s.dim();
  const SphereQuadrature rule = sphere_rule(n, default_sphere_level(n));
  const double value = rule.integrate([&](const Direction& u) { return std::pow(s.radial(u), q); }) / n;
  return finish_quermass(n, q, value, [&] {
    return rule.integrate([&](const Direction& u) { return std::log(s.radial(u)); });
  });
}

SteinerFit dual_steiner_check(const Body& body, const std::vector<double>& t_samples) {
  const int n = dim_of(body);
  if (static_cast<int>(t_samples.size()) < n + 1) {
    throw GeometryError(ErrorCode::InvalidArgument, "need at least n + 1 radial sum parameters");
  }
  std::optional<HPolytope> poly;
  if (const auto* h = std::get_if<HPolytope>(&body)) poly = *h;
  if (const auto* v = std::get_if<VPolytope>(&body)) poly = v->to_hpolytope();

  const auto volume_of_radial_sum = [&](double t) {
    const auto g = [t, n](double r) { return std::pow(r + t, n) / n; };
    if (poly) return polytope_sphere_integral(*poly, g);
    const SphereQuadrature rule = sphere_rule(n, default_sphere_level(n));
    return rule.integrate([&](const Direction& u) { return g(radial(body, u)); });
  };

  const int rows = static_cast<int>(t_samples.size());
  Mat A(rows, n + 1);
  Vec b(rows);
  for (int r = 0; r < rows; ++r) {
    const double t = t_samples[r];
    if (!(t >= 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "radial sum parameters must be nonnegative");
    for (int i = 0; i <= n; ++i) {
      const double binom = std::tgamma(n + 1.0) / (std::tgamma(i + 1.0) * std::tgamma(n - i + 1.0));
      A(r, i) = binom * std::pow(t, n - i);
    }
    b(r) = volume_of_radial_sum(t);
  }
  const Vec coeffs = A.colPivHouseholderQr().solve(b);

  SteinerFit fit;
  fit.t_samples = t_samples;
  for (int i = 0; i <= n; ++i) {
    fit.fitted.push_back(coeffs(i));
    fit.direct.push_back(dual_quermassintegral(body, static_cast<double>(i)).value);
    fit.max_relative_error =
        std::max(fit.max_relative_error, std::abs(fit.fitted.back() - fit.direct.back()) / std::abs(fit.direct.back()));
  }
  return fit;
}

double dual_curvature_density_smooth(const SmoothBody& body, double q, const Direction& v) {
  if (!(q >= 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "smooth density requires q >= 0");
  const int n = body.dim();
  const double h = body.support(v);
  const double grad = body.gradient(v).norm();
  return h * std::pow(grad, q - n) * body.curvature_determinant(v) / n;
}

double valuation_check(const HPolytope& k, const HPolytope& l, double q) {
  const HPolytope cap = intersect(k, l);
  const HPolytope cup = hull_of_union(k, l);
  const double expected = k.volume() + l.volume() - cap.volume();
  if (std::abs(cup.volume() - expected) > 1e-9 * cup.volume()) {
    throw GeometryError(ErrorCode::NonConvexUnion, "union of the bodies is not convex");
  }
  const auto lhs = dual_curvature(k, q) + dual_curvature(l, q);
  const auto rhs = dual_curvature(cap, q) + dual_curvature(cup, q);
  return max_atom_discrepancy(lhs, rhs);
}

}  // namespace dualcurve
