#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "eznav/circumnav.hpp"
#include "eznav/errors.hpp"
#include "test_support.hpp"

namespace eznav {
namespace {

const PursuerThreat kGolden{{0.0, 0.0}, 0.9, 1.8 / 1.9, 0.2};

TEST(Circumnavigate, SymmetricExample) {
  const auto res = circumnavigate({-2.0, 0.0}, {2.0, 0.0}, {0.0, 0.0}, {"unit", 1.0}, 1.0);
  EXPECT_TRUE(res.blocked);
  EXPECT_NEAR(res.t_f, 2.0 * std::sqrt(3.0) + kPi / 3.0, 1e-12);
  EXPECT_NEAR(res.t_f, 4.5113, 1e-4);
  EXPECT_NEAR(res.theta1, 2.0 * kPi / 3.0, 1e-12);
  EXPECT_NEAR(res.theta2, kPi / 3.0, 1e-12);
  EXPECT_NEAR(res.tangent_in, res.tangent_out, 1e-12);
  EXPECT_NEAR(res.t_f, testing::shortest_path_around_disk({-2.0, 0.0}, {2.0, 0.0}, {0.0, 0.0}, 1.0, 4000),
              1e-4 * res.t_f);
}

TEST(Circumnavigate, VanishingObstacle) {
  const Point2 a{-3.0, 0.5};
  const Point2 b{4.0, -0.2};
  const auto res = circumnavigate(a, b, {0.0, 0.0}, {"tiny", 1e-9}, 0.8);
  EXPECT_NEAR(res.t_f, distance(a, b) / 0.8, 1e-8);
}

TEST(Circumnavigate, UnblockedChordIsStraight) {
  const auto res = circumnavigate({-3.0, 2.0}, {3.0, 2.0}, {0.0, 0.0}, {"r", 1.0}, 2.0);
  EXPECT_FALSE(res.blocked);
  EXPECT_NEAR(res.t_f, 3.0, 1e-15);
  EXPECT_EQ(res.path.size(), 2u);
}

TEST(Circumnavigate, Errors) {
  EXPECT_THROW(circumnavigate({-0.5, 0.0}, {3.0, 0.0}, {0.0, 0.0}, {"r", 1.0}, 1.0), InfeasibleError);
  EXPECT_THROW(circumnavigate({-3.0, 0.0}, {0.2, 0.0}, {0.0, 0.0}, {"r", 1.0}, 1.0), InfeasibleError);
  EXPECT_THROW(circumnavigate({-3.0, 0.0}, {3.0, 0.0}, {0.0, 0.0}, {"r", 0.0}, 1.0), ArgumentError);
  EXPECT_THROW(circumnavigate({-3.0, 0.0}, {3.0, 0.0}, {0.0, 0.0}, {"r", 1.0}, 0.0), ArgumentError);
}

TEST(StandardSpecs, GoldenThreat) {
  const auto specs = standard_specs(kGolden);
  ASSERT_EQ(specs.size(), 3u);
  EXPECT_EQ(specs[0].label, "Reach");
  EXPECT_NEAR(specs[0].radius, 1.1474, 1e-4);
  EXPECT_EQ(specs[1].label, "Worst");
  EXPECT_NEAR(specs[1].radius, 2.0, 1e-15);
  EXPECT_EQ(specs[2].label, "Apol");
  EXPECT_NEAR(specs[2].radius, 0.2947, 1e-4);
  EXPECT_NEAR(standard_specs(kGolden, ReachRadius::kRangeOnly)[0].radius, kGolden.range, 1e-15);
}

TEST(StandardSpecs, ApolOmittedWithWarning) {
  std::vector<std::string> warnings;
  const auto specs = standard_specs({{0.0, 0.0}, 1.5, 1.0, 0.1}, ReachRadius::kCapturability, &warnings);
  EXPECT_EQ(specs.size(), 2u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(PercentDifference, Examples) {
  EXPECT_DOUBLE_EQ(percent_difference(5.0, 5.0), 0.0);
  // One EZ time consistent with the Reach row yields the Worst row.
  const double t_ez = 7.46 * (1.0 - 0.0161);
  EXPECT_NEAR(percent_difference(t_ez, 7.46), -1.61, 1e-9);
  EXPECT_NEAR(percent_difference(t_ez, 8.44), -13.0, 0.05);
  EXPECT_GT(percent_difference(t_ez, 7.04), 0.0);
  EXPECT_THROW(percent_difference(1.0, 0.0), ArgumentError);
  EXPECT_THROW(percent_difference(1.0, -2.0), ArgumentError);
}

struct Geometry {
  Point2 a0;
  Point2 af;
  Point2 center;
  double radius;
  double mu;
};

// Random blocked geometry: both end points outside the disk, chord through it.
Geometry random_blocked(testing::Gen& gen) {
  for (;;) {
    Geometry g{gen.point(5.0), gen.point(5.0), gen.point(1.0), gen.uniform(0.2, 2.0), gen.uniform(0.3, 2.0)};
    if (distance(g.a0, g.center) > 1.05 * g.radius && distance(g.af, g.center) > 1.05 * g.radius &&
        testing::segment_point_distance(g.a0, g.af, g.center) < 0.95 * g.radius) {
      return g;
    }
  }
}

TEST(CircumnavProperties, PolylineLengthAndClearance) {
  testing::Gen gen(41);
  for (int i = 0; i < 200; ++i) {
    const Geometry g = random_blocked(gen);
    const auto res = circumnavigate(g.a0, g.af, g.center, {"g", g.radius}, g.mu);
    ASSERT_NEAR(res.path.length(), g.mu * res.t_f, 1e-6 * g.mu * res.t_f) << i;
    for (const Point2& p : res.path.points) {
      ASSERT_GE(distance(p, g.center), g.radius * (1.0 - 1e-9)) << i;
    }
    EXPECT_EQ(res.path.points.front(), g.a0);
    EXPECT_EQ(res.path.points.back(), g.af);
  }
}

TEST(CircumnavProperties, TangentAtJunctions) {
  testing::Gen gen(42);
  for (int i = 0; i < 200; ++i) {
    const Geometry g = random_blocked(gen);
    const auto res = circumnavigate(g.a0, g.af, g.center, {"g", g.radius}, g.mu);
    const auto& pts = res.path.points;
    const std::size_t last = pts.size() - 2;
    const double in_heading = res.path.headings.front();
    const double out_heading = res.path.headings.back();
    ASSERT_NEAR(std::cos(in_heading - bearing(g.center, pts[1])), 0.0, 1e-9) << i;
    ASSERT_NEAR(std::cos(out_heading - bearing(g.center, pts[last])), 0.0, 1e-9) << i;
  }
}

TEST(CircumnavProperties, NonDecreasingInRadius) {
  testing::Gen gen(43);
  for (int i = 0; i < 50; ++i) {
    const Geometry g = random_blocked(gen);
    const double max_r = 0.999 * std::min(distance(g.a0, g.center), distance(g.af, g.center));
    double prev = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double t = circumnavigate(g.a0, g.af, g.center, {"g", max_r * k / 100.0}, g.mu).t_f;
      ASSERT_GE(t, prev - 1e-12) << i << " " << k;
      prev = t;
    }
  }
}

TEST(CircumnavProperties, MatchesDijkstraOnPolygon) {
  testing::Gen gen(44);
  for (int i = 0; i < 20; ++i) {
    const Geometry g = random_blocked(gen);
    const auto res = circumnavigate(g.a0, g.af, g.center, {"g", g.radius}, g.mu);
    const double ref = testing::shortest_path_around_disk(g.a0, g.af, g.center, g.radius, 4000) / g.mu;
    ASSERT_NEAR(res.t_f, ref, 1e-4 * ref) << i;
  }
}

}  // namespace
}  // namespace eznav
