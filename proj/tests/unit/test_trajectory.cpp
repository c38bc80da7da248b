#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "eznav/errors.hpp"
#include "eznav/trajectory.hpp"

namespace eznav {
namespace {

TEST(ChainHeadings, ConstantSpeedGrid) {
  const std::vector<double> headings{0.0, kPi / 2.0, kPi / 2.0, 0.0};
  const Trajectory t = chain_headings({1.0, 1.0}, headings, 8.0, 0.5);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_DOUBLE_EQ(t.final_time(), 8.0);
  EXPECT_NEAR(t.points.back().x, 3.0, 1e-12);
  EXPECT_NEAR(t.points.back().y, 3.0, 1e-12);
  EXPECT_NEAR(t.length(), 4.0, 1e-12);
  EXPECT_NO_THROW(t.validate(0.5));
  EXPECT_THROW(t.validate(0.6), ArgumentError);
}

TEST(ResampleEqualChords, LShape) {
  const std::vector<Point2> poly{{0.0, 0.0}, {3.0, 0.0}, {3.0, 2.0}};
  const Trajectory t = resample_equal_chords(poly, 7, 2.0);
  ASSERT_EQ(t.size(), 8u);
  EXPECT_EQ(t.points.front(), poly.front());
  EXPECT_NEAR(distance(t.points.back(), poly.back()), 0.0, 1e-12);
  const double chord = distance(t.points[0], t.points[1]);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    EXPECT_NEAR(distance(t.points[k], t.points[k + 1]), chord, 1e-9);
    const Point2& p = t.points[k];
    const bool on_first = std::abs(p.y) < 1e-9 && p.x >= -1e-9 && p.x <= 3.0 + 1e-9;
    const bool on_second = std::abs(p.x - 3.0) < 1e-9 && p.y >= -1e-9 && p.y <= 2.0 + 1e-9;
    EXPECT_TRUE(on_first || on_second) << k;
  }
  EXPECT_NO_THROW(t.validate(2.0, 1e-8));
}

}  // namespace
}  // namespace eznav
