#include "dualcurve/sampling.hpp"

#include <cmath>

namespace dualcurve {

Direction random_direction(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Vec g(dim);
    for (int i = 0; i < dim; ++i) g(i) = gauss(rng);
    if (g.norm() > 1e-6) return Direction::normalized(g);
  }
}

std::vector<Direction> random_symmetric_directions(int dim, int pairs, std::mt19937_64& rng) {
  std::vector<Direction> dirs;
  while (static_cast<int>(dirs.size()) < 2 * pairs) {
    const Direction d = random_direction(dim, rng);
    bool close = false;
    for (const Direction& e : dirs) close = close || std::abs(d.dot(e)) > 1.0 - 1e-6;
    if (close) continue;
    dirs.push_back(d);
    dirs.push_back(-d);
  }
  return dirs;
}

HPolytope random_symmetric_polytope(int dim, int pairs, std::mt19937_64& rng, double lo, double hi) {
  if (pairs < dim) throw GeometryError(ErrorCode::InvalidArgument, "need at least n direction pairs");
  std::uniform_real_distribution<double> unif(lo, hi);
  const double mid = 0.5 * (lo + hi);
  double spread = 1.0;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    if (attempt > 0 && attempt % 50 == 0) spread *= 0.5;
    const std::vector<Direction> dirs = random_symmetric_directions(dim, pairs, rng);
    std::vector<double> h;
    for (int p = 0; p < pairs; ++p) {
      const double v = mid + spread * (unif(rng) - mid);
      h.push_back(v);
      h.push_back(v);
    }
    try {
      HPolytope body(dirs, h);
      if (body.active_count() == body.size()) return body;
    } catch (const GeometryError&) {
    }
  }
  throw GeometryError(ErrorCode::InvalidArgument, "could not draw a polytope with all facets active");
}

std::vector<double> random_even_values(const HPolytope& body, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> unif(lo, hi);
  std::vector<double> f(body.size(), 0.0);
  std::vector<bool> done(body.size(), false);
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (done[i]) continue;
    f[i] = unif(rng);
    done[i] = true;
    if (auto j = body.antipode(i)) {
      f[*j] = f[i];
      done[*j] = true;
    }
  }
  return f;
}

HPolytope box(const std::vector<double>& lower, const std::vector<double>& upper) {
  if (lower.size() != upper.size() || lower.size() < 2) {
    throw GeometryError(ErrorCode::InvalidArgument, "box bounds must have equal length >= 2");
  }
  const int n = static_cast<int>(lower.size());
  std::vector<Direction> normals;
  std::vector<double> offsets;
  for (int i = 0; i < n; ++i) {
    normals.push_back(Direction::axis(n, i, 1.0));
    offsets.push_back(upper[i]);
    normals.push_back(Direction::axis(n, i, -1.0));
    offsets.push_back(-lower[i]);
  }
  return HPolytope(std::move(normals), std::move(offsets));
}

HPolytope cube(int dim, double half) {
  return box(std::vector<double>(dim, -half), std::vector<double>(dim, half));
}

HPolytope cross_polytope(int dim) {
  std::vector<Direction> normals;
  std::vector<double> offsets;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = (mask >> i) & 1 ? -1.0 : 1.0;
    normals.push_back(Direction::normalized(v));
    offsets.push_back(1.0 / std::sqrt(static_cast<double>(dim)));
  }
  return HPolytope(std::move(normals), std::move(offsets));
}

std::pair<HPolytope, HPolytope> random_box_pair(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> side(0.5, 1.5);
  std::uniform_int_distribution<int> pick(0, dim - 1);
  std::vector<double> lo(dim), hi(dim);
  for (int i = 0; i < dim; ++i) {
    lo[i] = -side(rng);
    hi[i] = side(rng);
  }
  std::vector<double> lo2 = lo, hi2 = hi;
  const int axis = pick(rng);
  lo2[axis] = -side(rng) - 0.5;
  hi2[axis] = std::uniform_real_distribution<double>(0.1, 0.9)(rng) * hi[axis];
  return {box(lo, hi), box(lo2, hi2)};
}

}  // namespace dualcurve
