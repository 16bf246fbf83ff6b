#include <gtest/gtest.h>

#include <dualcurve/dualcurve.hpp>

#include "oracles.hpp"

using namespace dualcurve;

TEST(LogWulff, ConstantPerturbationScales) {
  std::mt19937_64 rng(103);
  const HPolytope p = random_symmetric_polytope(3, 6, rng);
  const HPolytope s = log_wulff(p, std::vector<double>(p.size(), 0.7), 0.1);
  EXPECT_LE(hausdorff_distance(s.vertices(), p.scaled(std::exp(0.07)).vertices()), 1e-12);
  const HPolytope z = log_wulff(p, std::vector<double>(p.size(), 0.0), 0.3);
  EXPECT_LE(hausdorff_distance(z.vertices(), p.vertices()), 1e-15);
}

TEST(LogWulff, CubeWithOneFacetPushed) {
  const HPolytope c = cube(3);
  std::vector<double> f(6, 0.0);
  f[0] = 1.0;
  const HPolytope b = log_wulff(c, f, 0.1);
  EXPECT_NEAR(b.offset(0), std::exp(0.1), 1e-15);
  for (std::size_t i = 1; i < 6; ++i) EXPECT_DOUBLE_EQ(b.offset(i), 1.0);
  EXPECT_NEAR(b.volume(), 4.0 * (1.0 + std::exp(0.1)), 1e-12);
}

TEST(LinearWulff, AddsPerturbation) {
  const HPolytope b = linear_wulff(cube(2), {1, 0, 0, 0}, 0.5);
  EXPECT_DOUBLE_EQ(b.offset(0), 1.5);
}

TEST(DualVariation, ConstantPerturbationIsScaling) {
  std::mt19937_64 rng(107);
  const HPolytope p = random_symmetric_polytope(3, 8, rng);
  for (double q : {0.5, 2.0, 3.0}) {
    const auto c = check_dual_variation(p, std::vector<double>(p.size(), 1.0), q);
    EXPECT_NEAR(c.predicted, q * dual_quermassintegral(p, q).value, 1e-10 * c.predicted);
    EXPECT_LE(c.error, 1e-6);
  }
}

TEST(DualVariation, RandomPolytopeQTwo) {
  std::mt19937_64 rng(109);
  const HPolytope p = random_symmetric_polytope(3, 10, rng);
  const auto f = random_even_values(p, rng, -1.0, 1.0);
  const auto c = check_dual_variation(p, f, 2.0, 1e-4);
  EXPECT_EQ(c.formula, "dual_quermassintegral_variation");
  EXPECT_LE(c.error, 1e-3);
  // Finite difference of the facet-route totals.
  const double fd = oracle::central_difference(
      [&](double t) { return dual_curvature(log_wulff(p, f, t), 2.0).total(); }, 1e-4);
  EXPECT_NEAR(fd, c.predicted, 1e-3 * std::abs(c.predicted));
}

TEST(DualVariation, QEqualsNIsConeVolumePairing) {
  std::mt19937_64 rng(113);
  const HPolytope p = random_symmetric_polytope(3, 7, rng);
  const auto f = random_even_values(p, rng, -1.0, 1.0);
  const auto cv = cone_volume_measure(p);
  double pairing = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) pairing += f[i] * cv[i].weight;
  const auto c = check_dual_variation(p, f, 3.0);
  EXPECT_NEAR(c.predicted, 3.0 * pairing, 1e-10);
  EXPECT_LE(c.error, 1e-3);
}

TEST(DualVariation, ZeroQIsRejected) {
  EXPECT_THROW(check_dual_variation(cube(3), std::vector<double>(6, 1.0), 0.0), GeometryError);
}

TEST(Q0Variation, ConstantAndZero) {
  std::mt19937_64 rng(127);
  const HPolytope p = random_symmetric_polytope(3, 6, rng);
  const auto one = check_q0_variation(p, std::vector<double>(p.size(), 1.0));
  EXPECT_NEAR(one.predicted, 1.0, 1e-12);
  EXPECT_NEAR(one.finite_difference, 1.0, 1e-9);
  const auto zero = check_q0_variation(p, std::vector<double>(p.size(), 0.0));
  EXPECT_EQ(zero.predicted, 0.0);
  EXPECT_NEAR(zero.finite_difference, 0.0, 1e-12);
}

TEST(Q0Variation, RandomOnCube) {
  std::mt19937_64 rng(131);
  const HPolytope c = cube(3);
  const auto f = random_even_values(c, rng, -1.0, 1.0);
  EXPECT_LE(check_q0_variation(c, f, 1e-4).error, 1e-3);
}

TEST(Aleksandrov, ScalingAndMeanWidth) {
  std::mt19937_64 rng(137);
  const HPolytope p = random_symmetric_polytope(3, 7, rng);
  const auto scaled = check_aleksandrov(p, p.offsets());
  EXPECT_NEAR(scaled.predicted, 3.0 * p.volume(), 1e-10);
  EXPECT_LE(scaled.error, 1e-6);
  const auto unit = check_aleksandrov(p, std::vector<double>(p.size(), 1.0));
  EXPECT_NEAR(unit.predicted, surface_area_measure(p).total(), 1e-12);
  EXPECT_LE(unit.error, 1e-6);
}

TEST(Aleksandrov, RandomPerturbation) {
  std::mt19937_64 rng(139);
  const HPolytope p = random_symmetric_polytope(3, 8, rng);
  const auto f = random_even_values(p, rng, -1.0, 1.0);
  EXPECT_LE(check_aleksandrov(p, f, 1e-4).error, 1e-3);
}

TEST(Variation, ChainRuleAtQEqualsN) {
  // The log family with f and the linear family with f h agree to first order.
  std::mt19937_64 rng(149);
  const HPolytope p = random_symmetric_polytope(3, 7, rng);
  const auto f = random_even_values(p, rng, -1.0, 1.0);
  std::vector<double> fh(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) fh[i] = f[i] * p.offset(i);
  const auto dual = check_dual_variation(p, f, 3.0);
  const auto alex = check_aleksandrov(p, fh);
  EXPECT_NEAR(dual.finite_difference, alex.finite_difference, 1e-3 * std::abs(alex.finite_difference));
}

TEST(Variation, SecondOrderDecay) {
  std::mt19937_64 rng(151);
  const HPolytope p = random_symmetric_polytope(3, 6, rng);
  const auto f = random_even_values(p, rng, -1.0, 1.0);
  const auto d = second_order_decay([&](double t) { return check_dual_variation(p, f, 1.0, t); }, 1e-2);
  EXPECT_NEAR(d.ratio, 4.0, 0.2);
  const auto a = second_order_decay([&](double t) { return check_aleksandrov(p, f, t); }, 1e-2);
  EXPECT_NEAR(a.ratio, 4.0, 0.2);
}

TEST(Variation, StepShrinksWhenAFacetAppears) {
  // A halfspace just touching a vertex becomes active for t > 0 only.
  const HPolytope c = cube(3);
  std::vector<Direction> d = c.normals();
  d.push_back(Direction::normalized(Eigen::Vector3d(1, 1, 1)));
  std::vector<double> h(6, 1.0);
  h.push_back(std::sqrt(3.0) * (1.0 + 1e-6));
  const HPolytope p(d, h);
  std::vector<double> f(7, 0.0);
  f[6] = -1.0;
  const auto r = check_dual_variation(p, f, 2.0, 1e-4);
  EXPECT_GT(r.step_reductions, 0);
  EXPECT_LT(r.t_step, 1e-4);
}
