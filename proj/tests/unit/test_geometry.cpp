#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "eznav/errors.hpp"
#include "eznav/geometry.hpp"
#include "test_support.hpp"

namespace eznav {
namespace {

TEST(WrapAngle, Examples) {
  EXPECT_DOUBLE_EQ(wrap_radians(0.0), 0.0);
  EXPECT_DOUBLE_EQ(wrap_radians(3.0 * kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_radians(-3.0 * kPi / 2.0), kPi / 2.0);
  EXPECT_DOUBLE_EQ(wrap_radians(-kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(kPi).rad(), kPi);
}

TEST(WrapAngle, RejectsNonFinite) {
  EXPECT_THROW(wrap_radians(std::numeric_limits<double>::quiet_NaN()), DomainError);
  EXPECT_THROW(wrap_radians(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(WrapAngle, RangeCongruenceAndIdempotence) {
  testing::Gen gen(11);
  for (int i = 0; i < 10000; ++i) {
    const double a = gen.uniform(-1e3, 1e3);
    const double w = wrap_radians(a);
    ASSERT_GT(w, -kPi);
    ASSERT_LE(w, kPi);
    const double turns = (a - w) / kTwoPi;
    ASSERT_NEAR(turns, std::round(turns), 1e-9);
    ASSERT_EQ(wrap_radians(w), w);
  }
}

TEST(AngularSeparation, SymmetricAndBounded) {
  EXPECT_NEAR(angular_separation(kPi - 0.1, -kPi + 0.1), 0.2, 1e-12);
  testing::Gen gen(12);
  for (int i = 0; i < 1000; ++i) {
    const double a = gen.uniform(-20.0, 20.0);
    const double b = gen.uniform(-20.0, 20.0);
    ASSERT_DOUBLE_EQ(angular_separation(a, b), angular_separation(b, a));
    ASSERT_GE(angular_separation(a, b), 0.0);
    ASSERT_LE(angular_separation(a, b), kPi);
  }
}

TEST(AspectAngle, Examples) {
  EXPECT_NEAR(aspect_angle({-1.0, 0.0}, Angle::radians(0.0), {0.0, 0.0}).rad(), 0.0, 1e-15);
  EXPECT_NEAR(aspect_angle({-1.0, 0.0}, Angle::radians(kPi), {0.0, 0.0}).rad(), kPi, 1e-15);
  // Threat to the left of the heading: counter-clockwise, negative.
  EXPECT_NEAR(aspect_angle({0.0, -1.0}, Angle::radians(0.0), {0.0, 0.0}).rad(), -kPi / 2.0, 1e-15);
  EXPECT_NEAR(aspect_angle({0.0, 1.0}, Angle::radians(0.0), {0.0, 0.0}).rad(), kPi / 2.0, 1e-15);
}

TEST(AspectAngle, CoincidentPointsThrow) {
  EXPECT_THROW(aspect_angle({1.0, 2.0}, Angle::radians(0.0), {1.0, 2.0}), DomainError);
}

TEST(AspectAngle, MirrorAntisymmetry) {
  testing::Gen gen(13);
  for (int i = 0; i < 1000; ++i) {
    const Point2 a = gen.point(5.0);
    const Point2 t = gen.point(5.0);
    const double los = bearing(a, t);
    const double d = gen.uniform(-3.0, 3.0);
    const double plus = aspect_angle(a, Angle::radians(los + d), t).rad();
    const double minus = aspect_angle(a, Angle::radians(los - d), t).rad();
    ASSERT_NEAR(std::sin(plus), -std::sin(minus), 1e-12);
    ASSERT_NEAR(std::cos(plus), std::cos(minus), 1e-12);
  }
}

TEST(Distance, ExamplesAndTriangleInequality) {
  EXPECT_DOUBLE_EQ(distance({0.0, 0.0}, {3.0, 4.0}), 5.0);
  EXPECT_DOUBLE_EQ(distance({-1.0, -1.0}, {-1.0, -1.0}), 0.0);
  testing::Gen gen(14);
  for (int i = 0; i < 1000; ++i) {
    const Point2 a = gen.point(10.0);
    const Point2 b = gen.point(10.0);
    const Point2 c = gen.point(10.0);
    ASSERT_LE(distance(a, c), distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST(Rotate, QuarterTurn) {
  const Point2 p = rotate({1.0, 0.0}, kPi / 2.0);
  EXPECT_NEAR(p.x, 0.0, 1e-15);
  EXPECT_NEAR(p.y, 1.0, 1e-15);
}

}  // namespace
}  // namespace eznav
