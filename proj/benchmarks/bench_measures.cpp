#include <benchmark/benchmark.h>

#include <random>

#include <dualcurve/dualcurve.hpp>

using namespace dualcurve;

static void BM_DualCurvature(benchmark::State& state) {
  std::mt19937_64 rng(0);
  const int dim = static_cast<int>(state.range(0));
  const HPolytope p = random_symmetric_polytope(dim, static_cast<int>(state.range(1)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(dual_curvature(p, 1.5).total());
}
BENCHMARK(BM_DualCurvature)->Args({2, 8})->Args({2, 32})->Args({3, 6})->Args({3, 12});

static void BM_DualCurvatureSpherical(benchmark::State& state) {
  std::mt19937_64 rng(0);
  const HPolytope p = random_symmetric_polytope(3, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(dual_curvature_spherical(p, 1.5).total());
}
BENCHMARK(BM_DualCurvatureSpherical)->Arg(6)->Arg(12);

static void BM_IntegralCurvature(benchmark::State& state) {
  std::mt19937_64 rng(0);
  const HPolytope p = random_symmetric_polytope(3, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(dual_curvature_q0(p).total());
}
BENCHMARK(BM_IntegralCurvature)->Arg(6)->Arg(12);

static void BM_Vertices(benchmark::State& state) {
  std::mt19937_64 rng(0);
  const auto dirs = random_symmetric_directions(3, static_cast<int>(state.range(0)), rng);
  const std::vector<double> h(dirs.size(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(HPolytope(dirs, h).vertices().size());
}
BENCHMARK(BM_Vertices)->Arg(6)->Arg(12)->Arg(24);

static void BM_Solve(benchmark::State& state) {
  std::mt19937_64 rng(0);
  const int dim = static_cast<int>(state.range(0));
  const HPolytope p = random_symmetric_polytope(dim, 6, rng);
  const auto mu = dual_curvature(p, 1.0);
  SolverConfig cfg;
  cfg.q = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_dual_minkowski(mu, cfg).residual);
}
BENCHMARK(BM_Solve)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
