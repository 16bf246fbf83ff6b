#include <gtest/gtest.h>

#include <cstdlib>

#include <dualcurve/dualcurve.hpp>

using namespace dualcurve;

namespace {

class ThreadEnv {
 public:
  explicit ThreadEnv(const char* value) {
    if (const char* old = std::getenv("DUALCURVE_THREADS")) saved_ = old;
    setenv("DUALCURVE_THREADS", value, 1);
  }
  ~ThreadEnv() {
    if (saved_.empty()) {
      unsetenv("DUALCURVE_THREADS");
    } else {
      setenv("DUALCURVE_THREADS", saved_.c_str(), 1);
    }
  }

 private:
  std::string saved_;
};

}  // namespace

TEST(Parallel, WorkerCountHonoursEnvironment) {
  ThreadEnv env("3");
  EXPECT_EQ(worker_count(), 3u);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  ThreadEnv env("4");
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Parallel, PropagatesExceptions) {
  ThreadEnv env("2");
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw GeometryError(ErrorCode::InvalidArgument, "boom");
               }),
               GeometryError);
}

TEST(Parallel, MeasuresDoNotDependOnWorkerCount) {
  std::mt19937_64 rng(199);
  const HPolytope p = random_symmetric_polytope(3, 9, rng);
  std::vector<double> one, many;
  {
    ThreadEnv env("1");
    one = dual_curvature(p, 1.5).weights();
  }
  {
    ThreadEnv env("4");
    many = dual_curvature(p, 1.5).weights();
  }
  EXPECT_EQ(one, many);
}
