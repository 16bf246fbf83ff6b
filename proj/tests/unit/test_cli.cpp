#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <dualcurve/dualcurve.hpp>
#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dualcurve::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DUALCURVE_EXAMPLE_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dualcurve_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<double> weights(const std::string& text) {
  std::vector<double> w;
  const json j = json::parse(text);
  for (const auto& a : j["atoms"]) w.push_back(a["weight"].get<double>());
  return w;
}

}  // namespace

TEST(CliCompute, CubeConeVolume) {
  const auto r = run({"compute", data("cube.json"), "--measure-kind", "cone"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto w = weights(r.out);
  ASSERT_EQ(w.size(), 6u);
  for (double x : w) EXPECT_NEAR(x, 4.0 / 3.0, 1e-11);
}

TEST(CliCompute, SquareQOne) {
  const auto r = run({"compute", data("square.json"), "--q", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (double x : weights(r.out)) EXPECT_NEAR(x, std::log(1.0 + std::sqrt(2.0)), 1e-11);
}

TEST(CliCompute, CubeIntegralCurvature) {
  const auto r = run({"compute", data("cube.json"), "--measure-kind", "q0"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (double x : weights(r.out)) EXPECT_NEAR(x, 2.0 * M_PI / 9.0, 1e-11);
}

TEST(CliCompute, PrintsTwelveSignificantDigits) {
  const auto r = run({"compute", data("square.json"), "--q", "1"});
  EXPECT_NE(r.out.find("0.88137358702"), std::string::npos);
  EXPECT_EQ(r.out.find("0.8813735870195"), std::string::npos);
}

TEST(CliCompute, WritesMeasureFile) {
  const fs::path out = scratch("square_q2.json");
  const auto r = run({"compute", data("square.json"), "--q", "2", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto mu = dualcurve::load_measure(out.string());
  EXPECT_NEAR(mu.total(), 4.0, 1e-12);
}

TEST(CliCompute, FlagValidation) {
  EXPECT_EQ(run({"compute", data("square.json")}).code, 2);
  EXPECT_EQ(run({"compute", data("square.json"), "--measure-kind", "volume"}).code, 2);
  EXPECT_EQ(run({"compute", data("square.json"), "--measure-kind", "lp"}).code, 2);
  EXPECT_EQ(run({"compute", data("square.json"), "--measure-kind", "cone", "--q", "1"}).code, 2);
  EXPECT_EQ(run({"compute", data("missing.json"), "--q", "1"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliSolve, SquareRoundTrip) {
  const fs::path mu = scratch("mu_square.json");
  ASSERT_EQ(run({"compute", data("square.json"), "--q", "1", "--out", mu.string()}).code, 0);
  const fs::path body = scratch("body_square.json");
  const fs::path trace = scratch("trace_square.csv");
  const auto r = run({"solve", "--measure", mu.string(), "--q", "1", "--tol", "1e-6", "--out", body.string(),
                      "--trace", trace.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto b = std::get<dualcurve::HPolytope>(dualcurve::load_body(body.string()));
  for (double h : b.offsets()) EXPECT_NEAR(h, 1.0, 1e-4);
  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "iter,phi,residual,step");
}

TEST(CliSolve, EqualityCaseIsInfeasible) {
  const auto r = run({"solve", "--measure", data("cross4.json"), "--q", "2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(json::parse(r.out)["feasible"].get<bool>());
}

TEST(CliSolve, MalformedJson) {
  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{\"dim\": 2, \"atoms\": [";
  EXPECT_EQ(run({"solve", "--measure", bad.string(), "--q", "1"}).code, 2);
}

TEST(CliSolve, IterationCapGivesExitFour) {
  const fs::path mu = scratch("uneven.json");
  std::ofstream(mu) << R"({"dim":2,"atoms":[{"dir":[1,0],"weight":1},{"dir":[-1,0],"weight":1},)"
                    << R"({"dir":[0,1],"weight":3},{"dir":[0,-1],"weight":3},{"dir":[1,1],"weight":2},)"
                    << R"({"dir":[-1,-1],"weight":2},{"dir":[1,-1],"weight":1},{"dir":[-1,1],"weight":1}]})";
  const auto r = run({"solve", "--measure", mu.string(), "--q", "1", "--tol", "1e-14", "--max-iter", "1"});
  EXPECT_EQ(r.code, 4);
}

TEST(CliSmi, Verdicts) {
  EXPECT_EQ(run({"check-smi", "--measure", data("cross4.json"), "--q", "2"}).code, 3);
  const auto ok = run({"check-smi", "--measure", data("octagon8.json"), "--q", "2"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NEAR(json::parse(ok.out)["worst_fraction"].get<double>(), 0.25, 1e-12);
}

TEST(CliVerify, IdentitiesOnCube) {
  const auto r = run({"verify", data("cube.json"), "--suite", "identities"});
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
}

TEST(CliVerify, VariationalOnSeededRandomPolytope) {
  const auto r = run({"verify", "--random", "--seed", "42", "--suite", "variational"});
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  for (const auto& c : j["checks"]) {
    if (c.contains("formula")) {
      EXPECT_LE(c["error"].get<double>(), 1e-3);
      EXPECT_TRUE(c.contains("t_step"));
      EXPECT_TRUE(c.contains("q"));
    }
  }
}

TEST(CliVerify, SteinerOnSquare) {
  const auto r = run({"verify", data("square.json"), "--suite", "steiner"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_LE(json::parse(r.out)["checks"][0]["value"].get<double>(), 1e-4);
}

TEST(CliVerify, ValuationOnCube) {
  EXPECT_EQ(run({"verify", data("cube.json"), "--suite", "valuation", "--seed", "3"}).code, 0);
}

TEST(CliVerify, DeterministicForFixedSeed) {
  const auto a = run({"verify", "--random", "--seed", "7", "--suite", "identities", "--dim", "2"});
  const auto b = run({"verify", "--random", "--seed", "7", "--suite", "identities", "--dim", "2"});
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliVerify, NeedsExactlyOneBodySource) {
  EXPECT_EQ(run({"verify", "--suite", "identities"}).code, 2);
  EXPECT_EQ(run({"verify", data("cube.json"), "--random", "--suite", "identities"}).code, 2);
}

TEST(CliSteiner, PrintsCoefficients) {
  const auto r = run({"steiner", data("cube.json")});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["fitted"].size(), 4u);
  EXPECT_NEAR(j["fitted"][0].get<double>(), 4.0 * M_PI / 3.0, 1e-6);
  EXPECT_NEAR(j["fitted"][3].get<double>(), 8.0, 1e-6);
}
