#include <gtest/gtest.h>

#include <dualcurve/dualcurve.hpp>

#include "oracles.hpp"

using namespace dualcurve;

namespace {

DiscreteSphericalMeasure equal_atoms(int n, const std::vector<Direction>& dirs, double w = 1.0) {
  std::vector<Atom> atoms;
  for (const Direction& d : dirs) atoms.push_back({d, w});
  return DiscreteSphericalMeasure(n, atoms);
}

std::vector<Direction> circle(int count) {
  std::vector<Direction> d;
  for (int k = 0; k < count; ++k) {
    d.push_back(Direction::normalized(Eigen::Vector2d(std::cos(2 * M_PI * k / count), std::sin(2 * M_PI * k / count))));
  }
  return d;
}

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1]) return false;
  }
  return true;
}

}  // namespace

TEST(SubspaceMass, BoundValues) {
  EXPECT_DOUBLE_EQ(subspace_mass_bound(3, 2, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(subspace_mass_bound(3, 1, 1.0), 1.0);
  EXPECT_NEAR(subspace_mass_bound(2, 1, 2.0), 0.5, 1e-15);
  for (int d = 1; d < 3; ++d) EXPECT_NEAR(subspace_mass_bound(3, d, 3.0), d / 3.0, 1e-15);
}

TEST(SubspaceMass, EqualityCaseFails) {
  const auto mu = equal_atoms(2, circle(4));
  const auto r = check_subspace_mass(mu, 2.0);
  EXPECT_FALSE(r.satisfied);
  EXPECT_NEAR(r.worst_fraction, 0.5, 1e-15);
  EXPECT_EQ(r.worst_subspace.dim, 1);
}

TEST(SubspaceMass, EightDirectionsPass) {
  const auto r = check_subspace_mass(equal_atoms(2, circle(8)), 2.0);
  EXPECT_TRUE(r.satisfied);
  EXPECT_NEAR(r.worst_fraction, 0.25, 1e-15);
}

TEST(SubspaceMass, QOneInSpacePassesOffAGreatCircle) {
  std::mt19937_64 rng(157);
  const auto mu = equal_atoms(3, random_symmetric_directions(3, 5, rng));
  EXPECT_TRUE(check_subspace_mass(mu, 1.0).satisfied);
  // Everything on the equator: the plane carries all the mass.
  std::vector<Direction> eq;
  for (const Direction& d : circle(6)) eq.push_back(Direction::normalized(Eigen::Vector3d(d[0], d[1], 0.0)));
  EXPECT_FALSE(check_subspace_mass(equal_atoms(3, eq), 1.0).satisfied);
}

TEST(SubspaceMass, RejectsOddOrEmpty) {
  const DiscreteSphericalMeasure odd(2, {{Direction::axis(2, 0), 1.0}, {Direction::axis(2, 1), 1.0}});
  EXPECT_THROW(check_subspace_mass(odd, 1.0), GeometryError);
  const DiscreteSphericalMeasure empty(2, {{Direction::axis(2, 0), 0.0}, {Direction::axis(2, 0, -1), 0.0}});
  EXPECT_THROW(check_subspace_mass(empty, 1.0), GeometryError);
}

TEST(Phi, BallIsZeroAtEveryScale) {
  std::mt19937_64 rng(163);
  const auto mu = equal_atoms(3, random_symmetric_directions(3, 4, rng));
  EXPECT_NEAR(phi_mu(SmoothBody::ball(3, 1.0), mu, 2.0), 0.0, 1e-10);
  EXPECT_NEAR(phi_mu(SmoothBody::ball(3, 2.0), mu, 2.0), 0.0, 1e-10);
}

TEST(Phi, SquareValue) {
  const auto mu = equal_atoms(2, circle(4));
  EXPECT_NEAR(phi_mu(cube(2), mu, 2.0), 0.5 * std::log(4.0 / M_PI), 1e-13);
}

TEST(Phi, ScaleInvariant) {
  std::mt19937_64 rng(167);
  const HPolytope p = random_symmetric_polytope(3, 6, rng);
  const auto mu = dual_curvature(random_symmetric_polytope(3, 5, rng), 1.0);
  for (double q : {0.5, 1.0, 2.5}) {
    for (double lambda : {0.3, 4.0}) EXPECT_NEAR(phi_mu(p.scaled(lambda), mu, q), phi_mu(p, mu, q), 1e-10);
  }
}

TEST(PhiGradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(173);
  const HPolytope p = random_symmetric_polytope(3, 6, rng);
  const auto mu = equal_atoms(3, p.normals());
  const double q = 1.5;
  const auto g = phi_gradient(p, mu, q);
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<double> f(p.size(), 0.0);
    f[i] = 1.0;
    const double fd =
        oracle::central_difference([&](double t) { return phi_mu(log_wulff(p, f, t), mu, q); }, 1e-5);
    EXPECT_NEAR(g[i], fd, 1e-3 * std::abs(fd) + 1e-9);
  }
}

TEST(PhiGradient, VanishesOnOwnMeasure) {
  for (double q : {1.0, 2.0}) {
    const auto g = phi_gradient(cube(2), dual_curvature(cube(2), q), q);
    for (double x : g) EXPECT_NEAR(x, 0.0, 1e-13);
  }
}

TEST(PhiGradient, MissingDiagonalsAreNegative) {
  const auto mu = equal_atoms(2, circle(8));
  const auto g = phi_gradient(cube(2), mu, 2.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const bool axis = std::abs(mu[i].dir[0] * mu[i].dir[1]) < 1e-12;
    if (axis) {
      EXPECT_NEAR(g[i], -1.0 / 8.0 + 1.0 / 4.0, 1e-13);
    } else {
      EXPECT_NEAR(g[i], -1.0 / 8.0, 1e-15);
    }
  }
}

TEST(Solver, RecoversSquare) {
  SolverConfig cfg;
  cfg.q = 1.0;
  const auto r = solve_dual_minkowski(dual_curvature(cube(2), 1.0), cfg);
  ASSERT_TRUE(r.converged);
  ASSERT_TRUE(r.body);
  for (double h : r.body->offsets()) EXPECT_NEAR(h, 1.0, 1e-4);
}

TEST(Solver, RejectsEqualityCase) {
  SolverConfig cfg;
  cfg.q = 2.0;
  const auto r = solve_dual_minkowski(equal_atoms(2, circle(4)), cfg);
  EXPECT_FALSE(r.feasible);
  EXPECT_FALSE(r.body);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Solver, LogMinkowskiInstance) {
  std::mt19937_64 rng(179);
  for (int n : {2, 3}) {
    const auto dirs = random_symmetric_directions(n, n == 2 ? 5 : 6, rng);
    const auto mu = equal_atoms(n, dirs, unit_ball_volume(n) / dirs.size());
    SolverConfig cfg;
    cfg.q = n;
    const auto r = solve_dual_minkowski(mu, cfg);
    ASSERT_TRUE(r.feasible);
    ASSERT_TRUE(r.body);
    EXPECT_LE(l1_distance(cone_volume_measure(*r.body), mu) / mu.total(), 1e-3);
  }
}

TEST(Solver, RandomSpatialRoundTrips) {
  std::mt19937_64 rng(181);
  for (double q : {0.5, 1.0, 2.5}) {
    const HPolytope k = random_symmetric_polytope(3, 5, rng);
    SolverConfig cfg;
    cfg.q = q;
    const auto mu = dual_curvature(k, q);
    const auto r = solve_dual_minkowski(mu, cfg);
    ASSERT_TRUE(r.converged);
    EXPECT_LE(r.residual, 1e-3);
    EXPECT_TRUE(nondecreasing(r.phi_trace));
    // Recompute from scratch.
    const auto c = dual_curvature(*r.body, q);
    EXPECT_NEAR(l1_distance(c, mu) / mu.total(), r.residual, 1e-12);
    // Symmetric solutions are unique here, so the body itself is recovered.
    EXPECT_LE(hausdorff_distance(r.body->vertices(), k.vertices()), 1e-4);
  }
}

TEST(Solver, ScaleInvarianceOfIterates) {
  std::mt19937_64 rng(191);
  const HPolytope k = random_symmetric_polytope(3, 5, rng);
  const auto mu = dual_curvature(k, 1.0);
  SolverConfig a;
  a.q = 1.0;
  a.initial_offsets = std::vector<double>(mu.size(), 1.0);
  SolverConfig b = a;
  b.initial_offsets = std::vector<double>(mu.size(), 3.0);
  const auto ra = solve_dual_minkowski(mu, a);
  const auto rb = solve_dual_minkowski(mu, b);
  ASSERT_EQ(ra.residual_trace.size(), rb.residual_trace.size());
  for (std::size_t i = 0; i < ra.residual_trace.size(); ++i) {
    EXPECT_NEAR(ra.residual_trace[i], rb.residual_trace[i], 1e-9);
  }
  EXPECT_LE(hausdorff_distance(ra.body->vertices(), rb.body->vertices()), 1e-9);
}

TEST(Solver, ResidualAgreesWithGradientTest) {
  std::mt19937_64 rng(193);
  const HPolytope k = random_symmetric_polytope(2, 5, rng);
  SolverConfig cfg;
  cfg.q = 1.0;
  const auto mu = dual_curvature(k, 1.0);
  const auto r = solve_dual_minkowski(mu, cfg);
  ASSERT_TRUE(r.converged);
  const auto g = phi_gradient(*r.body, mu, 1.0);
  double l1 = 0.0;
  for (double x : g) l1 += std::abs(x);
  EXPECT_NEAR(l1, r.residual, 1e-12);
  EXPECT_LE(l1, cfg.tol);
}

TEST(Solver, IterationCapReportsNonConvergence) {
  SolverConfig cfg;
  cfg.q = 1.0;
  cfg.max_iter = 1;
  cfg.tol = 1e-14;
  std::mt19937_64 rng(197);
  const auto r = solve_dual_minkowski(dual_curvature(random_symmetric_polytope(2, 6, rng), 1.0), cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_TRUE(r.body);
}

TEST(Solver, ValidatesInput) {
  const DiscreteSphericalMeasure odd(2, {{Direction::axis(2, 0), 1.0}, {Direction::axis(2, 1), 1.0}});
  SolverConfig cfg;
  EXPECT_THROW(solve_dual_minkowski(odd, cfg), GeometryError);
  cfg.q = 3.0;
  EXPECT_THROW(solve_dual_minkowski(equal_atoms(2, circle(8)), cfg), GeometryError);
  cfg.q = 1.0;
  cfg.tol = 0.0;
  EXPECT_THROW(solve_dual_minkowski(equal_atoms(2, circle(8)), cfg), GeometryError);
}
