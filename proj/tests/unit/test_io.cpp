#include <gtest/gtest.h>

#include <dualcurve/dualcurve.hpp>

using namespace dualcurve;

TEST(BodyJson, ReadsHPolytopeAndNormalizes) {
  const Body b = body_from_json(R"({"type":"hpolytope","dim":2,
      "normals":[[2,0],[-1,0],[0,1],[0,-3]],"offsets":[2,1,1,3]})");
  const auto& p = std::get<HPolytope>(b);
  for (double h : p.offsets()) EXPECT_DOUBLE_EQ(h, 1.0);
  EXPECT_NEAR(p.volume(), 4.0, 1e-14);
}

TEST(BodyJson, ReadsOtherKinds) {
  const Body v = body_from_json(R"({"type":"vpolytope","dim":2,"vertices":[[1,0],[0,1],[-1,0],[0,-1],[0.1,0.1]]})");
  EXPECT_EQ(std::get<VPolytope>(v).vertices().size(), 4u);
  const Body b = body_from_json(R"({"type":"ball","dim":3,"radius":2})");
  EXPECT_DOUBLE_EQ(std::get<SmoothBody>(b).axes()[2], 2.0);
  const Body e = body_from_json(R"({"type":"ellipsoid","axes":[1,2,3]})");
  EXPECT_EQ(std::get<SmoothBody>(e).kind(), SmoothBody::Kind::Ellipsoid);
}

TEST(BodyJson, RejectsMalformedInput) {
  const char* bad[] = {
      "{not json",
      R"({"dim":2})",
      R"({"type":"cone","dim":2})",
      R"({"type":"hpolytope","dim":2,"normals":[[1,0]],"offsets":[1,2]})",
      R"({"type":"hpolytope","dim":2,"normals":[[1,0,0]],"offsets":[1]})",
      R"({"type":"hpolytope","dim":2,"normals":[[1,0],[-1,0]],"offsets":[1,"x"]})",
  };
  for (const char* text : bad) {
    try {
      body_from_json(text);
      ADD_FAILURE() << text;
    } catch (const GeometryError& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidArgument) << text;
    }
  }
}

TEST(BodyJson, RoundTripIsBitwiseStable) {
  std::mt19937_64 rng(211);
  for (int k = 0; k < 20; ++k) {
    const Body b = random_symmetric_polytope(2 + k % 2, 4 + k % 5, rng);
    const std::string once = body_to_json(body_from_json(body_to_json(b)));
    const std::string twice = body_to_json(body_from_json(once));
    EXPECT_EQ(once, twice);
    const auto& p = std::get<HPolytope>(b);
    const HPolytope r = std::get<HPolytope>(body_from_json(body_to_json(b)));
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(r.offset(i), p.offset(i), 1e-15);
  }
  for (const Body& b : {Body(SmoothBody::ball(3, 1.25)), Body(SmoothBody::ellipsoid({1, 0.5})),
                        Body(VPolytope(2, {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(-1, -1)}))}) {
    const std::string s = body_to_json(b);
    EXPECT_EQ(body_to_json(body_from_json(s)), s);
  }
}

TEST(MeasureJson, RoundTripIsBitwiseStable) {
  std::mt19937_64 rng(223);
  for (int k = 0; k < 20; ++k) {
    const auto mu = dual_curvature(random_symmetric_polytope(2 + k % 2, 4 + k % 4, rng), 0.3 + 0.2 * k);
    const std::string once = measure_to_json(measure_from_json(measure_to_json(mu)));
    EXPECT_EQ(measure_to_json(measure_from_json(once)), once);
    const auto back = measure_from_json(measure_to_json(mu));
    EXPECT_EQ(back.even(), mu.even());
    EXPECT_LE(max_atom_discrepancy(back, mu), 1e-15);
  }
}

TEST(MeasureJson, NormalizesDirectionsAndChecksEvenFlag) {
  const auto mu = measure_from_json(R"({"dim":2,"even":true,"atoms":[{"dir":[3,0],"weight":1},{"dir":[-1,0],"weight":1}]})");
  EXPECT_DOUBLE_EQ(mu[0].dir[0], 1.0);
  EXPECT_TRUE(mu.even());
  EXPECT_THROW(measure_from_json(R"({"dim":2,"even":true,"atoms":[{"dir":[1,0],"weight":1}]})"), GeometryError);
  EXPECT_THROW(measure_from_json(R"({"dim":2,"atoms":[{"dir":[1,0],"weight":-1}]})"), GeometryError);
  EXPECT_THROW(measure_from_json(R"({"dim":2,"atoms":[{"dir":[0,0],"weight":1}]})"), GeometryError);
}

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(M_PI), "3.14159265359");
  EXPECT_EQ(format_number(0.5), "0.5");
}
