#include "dualcurve/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace dualcurve {

namespace {

constexpr int kBaseDegree = 8;
constexpr int kMaxFacetDepth = 8;
constexpr double kCoplanarTolerance = 1e-9;

}  // namespace

GaussRule gauss_legendre(int points) {
  if (points < 1) throw GeometryError(ErrorCode::InvalidArgument, "Gauss rule needs at least one point");
  static std::mutex cache_mutex;
  static std::map<int, GaussRule> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(points); it != cache.end()) return it->second;
  }
  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= points; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = points * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= points; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = points * (x * p0 - p1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[points - 1 - i] = w;
  }
  if (points % 2 == 1) rule.nodes[points / 2] = 0.0;
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(points, rule);
  return rule;
}

double SphereQuadrature::integrate(const std::function<double(const Direction&)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

double SphereQuadrature::total_weight() const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  return sum;
}

namespace {

double radical_inverse(unsigned long long index, int base) {
  double result = 0.0, f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

}  // namespace

SphereQuadrature sphere_rule(int dim, int level) {
  if (level < 1) throw GeometryError(ErrorCode::InvalidArgument, "sphere rule level must be at least 1");
  if (dim < 2) throw GeometryError(ErrorCode::InvalidArgument, "dimension must be at least 2");
  SphereQuadrature q;
  q.dim = dim;
  if (dim == 2) {
    const int count = 1 << level;
    for (int j = 0; j < count; ++j) {
      const double a = 2.0 * M_PI * j / count;
      Vec v(2);
      v << std::cos(a), std::sin(a);
      q.nodes.push_back(Direction::normalized(v));
      q.weights.push_back(2.0 * M_PI / count);
    }
    return q;
  }
  if (dim == 3) {
    const int k = 1 << level;
    const GaussRule gl = gauss_legendre(k);
    const int nphi = 2 * k;
    for (int i = 0; i < k; ++i) {
      const double z = gl.nodes[i];
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int j = 0; j < nphi; ++j) {
        const double phi = 2.0 * M_PI * (j + 0.5) / nphi;
        Vec v(3);
        v << r * std::cos(phi), r * std::sin(phi), z;
        q.nodes.push_back(Direction::normalized(v));
        q.weights.push_back(gl.weights[i] * 2.0 * M_PI / nphi);
      }
    }
    return q;
  }
  static constexpr std::array<int, 16> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  const int coords = dim + (dim % 2);
  if (coords > static_cast<int>(kPrimes.size())) {
    throw GeometryError(ErrorCode::UnsupportedDimension, "sphere rule supports n <= 16");
  }
  const int half = 1 << (level + 7);
  const double w = sphere_area(dim) / (2.0 * half);
  for (int s = 1; s <= half; ++s) {
    Vec g(coords);
    for (int c = 0; c < coords; c += 2) {
      const double u1 = std::max(radical_inverse(s, kPrimes[c]), 1e-300);
      const double u2 = radical_inverse(s, kPrimes[c + 1]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      g(c) = r * std::cos(2.0 * M_PI * u2);
      g(c + 1) = r * std::sin(2.0 * M_PI * u2);
    }
    const Direction d = Direction::normalized(g.head(dim));
    q.nodes.push_back(d);
    q.nodes.push_back(-d);
    q.weights.push_back(w);
    q.weights.push_back(w);
  }
  return q;
}

int default_sphere_level(int dim) {
  if (dim == 2) return 12;
  if (dim == 3) return 6;
  return 8;
}

double arc_integral(const std::function<double(double)>& f, double lo, double hi, double tol,
                    double* error_estimate) {
  if (!(tol > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "tolerance must be positive");
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  if (lo == hi) {
    if (error_estimate) *error_estimate = 0.0;
    return 0.0;
  }
  double err = 0.0;
  const double rough = std::abs(GK::integrate(f, lo, hi, 0, 0.0, &err));
  const double rel = std::max(tol / std::max(rough, tol), 1e-15);
  const double value = GK::integrate(f, lo, hi, 12, rel, &err);
  if (error_estimate) *error_estimate = err;
  return value;
}

double FacetQuadrature::integrate(const std::function<double(const Vec&)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) sum += weights[i] * f(points[i]);
  return sum;
}

double FacetQuadrature::area() const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  return sum;
}

namespace {

struct Triangle {
  Eigen::Vector3d a, b, c;
};

// Collapsed product rule: x = a + s[(b - a) + t (c - b)], Jacobian 2 |T| s.
template <typename Visit>
void triangle_rule(const Triangle& tri, const GaussRule& gl, Visit&& visit) {
  const Eigen::Vector3d ab = tri.b - tri.a, bc = tri.c - tri.b;
  const double twice_area = ab.cross(bc).norm();
  const std::size_t k = gl.nodes.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double s = 0.5 * (gl.nodes[i] + 1.0);
    const double ws = 0.5 * gl.weights[i];
    for (std::size_t j = 0; j < k; ++j) {
      const double t = 0.5 * (gl.nodes[j] + 1.0);
      const double wt = 0.5 * gl.weights[j];
      visit(Eigen::Vector3d(tri.a + s * (ab + t * bc)), ws * wt * s * twice_area);
    }
  }
}

int points_for_degree(int degree) { return std::max(1, (degree + 3) / 2); }

std::vector<Triangle> fan(const std::vector<Vec>& vertices) {
  if (vertices.size() < 3) throw GeometryError(ErrorCode::InvalidFacet, "invalid facet: fewer than 3 vertices");
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const Vec& v : vertices) centroid += Eigen::Vector3d(v);
  centroid /= static_cast<double>(vertices.size());
  // Newell normal for the coplanarity check.
  Eigen::Vector3d normal = Eigen::Vector3d::Zero();
  double scale = 0.0;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const Eigen::Vector3d p = vertices[k], q = vertices[(k + 1) % vertices.size()];
    normal += p.cross(q);
    scale = std::max(scale, (p - centroid).norm());
  }
  if (normal.norm() == 0.0) throw GeometryError(ErrorCode::InvalidFacet, "invalid facet: degenerate polygon");
  normal.normalize();
  for (const Vec& v : vertices) {
    if (std::abs(normal.dot(Eigen::Vector3d(v) - centroid)) > kCoplanarTolerance * std::max(1.0, scale)) {
      throw GeometryError(ErrorCode::InvalidFacet, "invalid facet: vertices are not coplanar");
    }
  }
  std::vector<Triangle> tris;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    tris.push_back({centroid, Eigen::Vector3d(vertices[k]), Eigen::Vector3d(vertices[(k + 1) % vertices.size()])});
  }
  return tris;
}

double triangle_value(const Triangle& tri, const GaussRule& gl, const std::function<double(const Vec&)>& f) {
  double sum = 0.0;
  triangle_rule(tri, gl, [&](const Eigen::Vector3d& x, double w) { sum += w * f(Vec(x)); });
  return sum;
}

double adaptive_triangle(const Triangle& tri, double coarse, const GaussRule& gl,
                         const std::function<double(const Vec&)>& f, double tol, int depth) {
  const Eigen::Vector3d ab = 0.5 * (tri.a + tri.b), bc = 0.5 * (tri.b + tri.c), ca = 0.5 * (tri.c + tri.a);
  const std::array<Triangle, 4> kids = {Triangle{tri.a, ab, ca}, Triangle{ab, tri.b, bc}, Triangle{ca, bc, tri.c},
                                        Triangle{ab, bc, ca}};
  std::array<double, 4> vals{};
  double fine = 0.0;
  double mass = 0.0;
  for (int k = 0; k < 4; ++k) {
    vals[k] = triangle_value(kids[k], gl, f);
    fine += vals[k];
    mass += std::abs(vals[k]);
  }
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * mass;
  if (std::abs(fine - coarse) <= std::max(tol, floor) || depth >= kMaxFacetDepth) return fine;
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) sum += adaptive_triangle(kids[k], vals[k], gl, f, 0.25 * tol, depth + 1);
  return sum;
}

}  // namespace

FacetQuadrature facet_rule(const std::vector<Vec>& facet_vertices, int degree) {
  if (degree < 0) throw GeometryError(ErrorCode::InvalidArgument, "degree must be nonnegative");
  if (facet_vertices.empty()) throw GeometryError(ErrorCode::InvalidFacet, "invalid facet: no vertices");
  const int dim = static_cast<int>(facet_vertices.front().size());
  const GaussRule gl = gauss_legendre(points_for_degree(degree));
  FacetQuadrature rule;
  if (dim == 2) {
    if (facet_vertices.size() != 2) throw GeometryError(ErrorCode::InvalidFacet, "invalid facet: a segment needs 2 vertices");
    const Vec& a = facet_vertices[0];
    const Vec& b = facet_vertices[1];
    const double len = (b - a).norm();
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double s = 0.5 * (gl.nodes[i] + 1.0);
      rule.points.push_back(a + s * (b - a));
      rule.weights.push_back(0.5 * gl.weights[i] * len);
    }
    return rule;
  }
  if (dim != 3) throw GeometryError(ErrorCode::UnsupportedDimension, "facet rules are available for n in {2, 3}");
  for (const Triangle& tri : fan(facet_vertices)) {
    triangle_rule(tri, gl, [&](const Eigen::Vector3d& x, double w) {
      rule.points.emplace_back(x);
      rule.weights.push_back(w);
    });
  }
  return rule;
}

double facet_integral(const std::vector<Vec>& facet_vertices, const std::function<double(const Vec&)>& f,
                      double rel_tol) {
  if (facet_vertices.empty()) throw GeometryError(ErrorCode::InvalidFacet, "invalid facet: no vertices");
  const int dim = static_cast<int>(facet_vertices.front().size());
  const GaussRule gl = gauss_legendre(points_for_degree(kBaseDegree));
  if (dim == 2) {
    if (facet_vertices.size() != 2) throw GeometryError(ErrorCode::InvalidFacet, "invalid facet: a segment needs 2 vertices");
    const Vec a = facet_vertices[0];
    const Vec d = facet_vertices[1] - a;
    const double len = d.norm();
    const auto g = [&](double s) { return f(Vec(a + s * d)) * len; };
    double rough = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) rough += 0.5 * gl.weights[i] * g(0.5 * (gl.nodes[i] + 1.0));
    return arc_integral(g, 0.0, 1.0, std::max(rel_tol * std::abs(rough), 1e-300));
  }
  if (dim != 3) throw GeometryError(ErrorCode::UnsupportedDimension, "facet integrals are available for n in {2, 3}");
  const std::vector<Triangle> tris = fan(facet_vertices);
  std::vector<double> coarse(tris.size());
  double rough = 0.0;
  for (std::size_t k = 0; k < tris.size(); ++k) {
    coarse[k] = triangle_value(tris[k], gl, f);
    rough += std::abs(coarse[k]);
  }
  const double tol = rel_tol * rough / static_cast<double>(tris.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < tris.size(); ++k) sum += adaptive_triangle(tris[k], coarse[k], gl, f, tol, 0);
  return sum;
}

}  // namespace dualcurve
