#include "dualcurve/gauss_maps.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "dualcurve/quadrature.hpp"
#include "dualcurve/sampling.hpp"

namespace dualcurve {

std::optional<std::size_t> radial_gauss(const HPolytope& body, const Direction& u) {
  double best = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const double c = u.dot(body.normal(i));
    if (c <= 0.0) continue;
    const double r = body.offset(i) / c;
    if (r < best) {
      second = best;
      best = r;
      arg = i;
    } else if (r < second) {
      second = r;
    }
  }
  if (second - best <= kGaussTieTolerance * best) return std::nullopt;
  return arg;
}

std::vector<ConeCell> cone_partition(const HPolytope& body) {
  std::vector<ConeCell> cells;
  cells.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    ConeCell cell{i, body.normal(i), body.offset(i), body.is_active(i), {}, {}};
    if (cell.active) {
      cell.facet_vertices = body.facet_points(i);
      for (const Vec& x : cell.facet_vertices) cell.apex_rays.push_back(Direction::normalized(x));
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

bool cell_contains(const HPolytope& body, const ConeCell& cell, const Direction& u) {
  if (!cell.active) return false;
  const double c = u.dot(cell.normal);
  if (c <= 0.0) return false;
  return cell.offset / c <= radial(body, u) * (1.0 + kGaussTieTolerance);
}

double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c) {
  const auto side = [](const Vec& x, const Vec& y) {
    const double cr = (x - x.dot(y) * y).norm();
    return std::atan2(cr, x.dot(y));
  };
  const double sa = side(b, c), sb = side(c, a), sc = side(a, b);
  const double s = 0.5 * (sa + sb + sc);
  const double t = std::tan(0.5 * s) * std::tan(0.5 * (s - sa)) * std::tan(0.5 * (s - sb)) *
                   std::tan(0.5 * (s - sc));
  return 4.0 * std::atan(std::sqrt(std::max(0.0, t)));
}

double cell_measure(const HPolytope& body, const ConeCell& cell) {
  if (!cell.active) return 0.0;
  const int n = body.dim();
  if (n == 2) return cell.apex_rays.front().angle_to(cell.apex_rays.back());
  if (n == 3) {
    Vec centroid = Vec::Zero(3);
    for (const Vec& x : cell.facet_vertices) centroid += x;
    const Vec c = centroid.normalized();
    double area = 0.0;
    const std::size_t k = cell.apex_rays.size();
    for (std::size_t j = 0; j < k; ++j) {
      area += spherical_triangle_area(c, cell.apex_rays[j].coords(), cell.apex_rays[(j + 1) % k].coords());
    }
    return area;
  }
  const SphereQuadrature rule = sphere_rule(n, default_sphere_level(n));
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    if (radial_gauss(body, rule.nodes[j]) == cell.facet_index) sum += rule.weights[j];
  }
  return sum;
}

Direction reverse_radial_gauss_smooth(const SmoothBody& body, const Direction& v) {
  return Direction::normalized(body.gradient(v));
}

double polar_fan_disagreement(const HPolytope& body, std::size_t samples, std::uint64_t seed) {
  const VPolytope dual = polar(body);
  // Each polar vertex is v_i / h_i for an active facet i.
  std::vector<std::size_t> facet_of_vertex;
  for (const Vec& x : dual.vertices()) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < body.size(); ++i) {
      const double d = (x - body.normal(i).coords() / body.offset(i)).norm();
      if (d < dist) {
        dist = d;
        best = i;
      }
    }
    facet_of_vertex.push_back(best);
  }
  std::mt19937_64 rng(seed);
  std::size_t disagreements = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Direction u = random_direction(body.dim(), rng);
    const auto hit = radial_gauss(body, u);
    if (!hit) continue;
    std::size_t arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dual.vertices().size(); ++k) {
      const double val = u.dot(dual.vertices()[k]);
      if (val > best) {
        best = val;
        arg = k;
      }
    }
    if (facet_of_vertex[arg] != *hit) ++disagreements;
  }
  return samples == 0 ? 0.0 : static_cast<double>(disagreements) / static_cast<double>(samples);
}

}  // namespace dualcurve
