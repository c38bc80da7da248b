#include <cmath>

#include <gtest/gtest.h>

#include "eznav/engagement_oracle.hpp"
#include "eznav/errors.hpp"
#include "eznav/ez_pursuit.hpp"
#include "test_support.hpp"

namespace eznav {
namespace {

const PursuerThreat kFast{{0.0, 0.0}, 0.7, 1.0, 0.25};
const PursuerThreat kSlow{{0.0, 0.0}, 1.5, 1.0, 0.25};

Angle rad(double v) { return Angle::radians(v); }

Point2 at_aspect(const PursuerThreat& t, double heading, double xi, double d) {
  return t.position - unit_vector(heading - xi) * d;
}

TEST(PursuitOracle, HeadOn) {
  EXPECT_TRUE(pursuit_capture_possible({-1.9, 0.0}, rad(0.0), kFast));
  EXPECT_FALSE(pursuit_capture_possible({-2.0, 0.0}, rad(0.0), kFast));
}

TEST(PursuitOracle, StartInsideCaptureDisk) {
  const auto cert = pursuit_capture_certificate({0.1, 0.05}, rad(2.0), kFast);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->time, 0.0);
  EXPECT_EQ(cert->pursuer_path_length, 0.0);
}

TEST(PursuitOracle, SlowPursuerCannotCatchAgentFleeing) {
  EXPECT_FALSE(pursuit_capture_possible({0.5, 0.0}, rad(0.0), kSlow));
}

TEST(PursuitOracle, BoundaryCaptureUsesTheWholeRange) {
  for (const PursuerThreat& t : {kFast, kSlow}) {
    const double r = rho(rad(0.0), t);
    const auto cert = pursuit_capture_certificate({-(1.0 - 1e-9) * r, 0.0}, rad(0.0), t);
    ASSERT_TRUE(cert.has_value());
    EXPECT_NEAR(cert->pursuer_path_length, t.range, 1e-6 * t.range);
  }
}

TEST(PursuitOracle, TouchAndGoHasZeroClosingRate) {
  const double xc = xi_crossover(kSlow).rad();
  const double xm = xi_touch_limit(kSlow);
  for (double xi : {xc + 0.2 * (xm - xc), 0.5 * (xc + xm), xc + 0.8 * (xm - xc)}) {
    const double r = rho(rad(xi), kSlow);
    const Point2 a0 = at_aspect(kSlow, 0.0, xi, (1.0 - 1e-10) * r);
    const auto cert = pursuit_capture_certificate(a0, rad(0.0), kSlow);
    ASSERT_TRUE(cert.has_value()) << xi;
    EXPECT_GT(cert->time, 0.0);
    EXPECT_LT(cert->time, kSlow.range);
    // d/dt (|A(t) - P0| - t) at the capture instant.
    const Point2 v = unit_vector(0.0) * kSlow.mu;
    const Point2 at = a0 + v * cert->time - kSlow.position;
    const double rate = at.dot(v) / at.norm() - 1.0;
    EXPECT_LE(std::abs(rate), 1e-4) << xi;
  }
}

TEST(PursuitOracle, MonotoneInRangeAndCaptureRadius) {
  testing::Gen gen(51);
  for (int i = 0; i < 500; ++i) {
    const PursuerThreat t = gen.pursuer();
    const Point2 a0 = t.position + unit_vector(gen.angle()) * gen.uniform(0.05, 5.0);
    const double psi = gen.angle();
    if (!pursuit_capture_possible(a0, rad(psi), t)) {
      continue;
    }
    PursuerThreat more = t;
    more.range *= gen.uniform(1.0, 2.0);
    more.capture_radius *= gen.uniform(1.0, 2.0);
    ASSERT_TRUE(pursuit_capture_possible(a0, rad(psi), more)) << i;
  }
}

TEST(PursuitOracle, ClassificationStableUnderFinerScan) {
  testing::Gen gen(52);
  OracleOptions fine;
  fine.scan_fraction = 2.5e-4;
  for (int i = 0; i < 1000; ++i) {
    const PursuerThreat t = gen.pursuer();
    const Point2 a0 = t.position + unit_vector(gen.angle()) * gen.uniform(0.05, 5.0);
    const double psi = gen.angle();
    if (std::abs(signed_clearance(a0, rad(psi), t)) < 1e-6) {
      continue;
    }
    ASSERT_EQ(pursuit_capture_possible(a0, rad(psi), t), pursuit_capture_possible(a0, rad(psi), t, fine)) << i;
  }
}

TEST(PursuitOracle, RejectsCoincidentStart) {
  EXPECT_THROW(pursuit_capture_possible({0.0, 0.0}, rad(0.0), kFast), DomainError);
}

TEST(TurretOracle, Examples) {
  const TurretThreat t{{0.0, 0.0}, 0.0, 0.5, 1.0};
  // In the beam and in range: immediate.
  const auto now = turret_neutralization_time({0.5, 0.0}, rad(kPi / 2.0), t);
  ASSERT_TRUE(now.has_value());
  EXPECT_EQ(*now, 0.0);
  // Never reaches the range disk.
  EXPECT_FALSE(turret_neutralization_time({-3.0, 2.0}, rad(0.0), t).has_value());
  // Leaving the disk before the turret can slew round.
  EXPECT_FALSE(turret_neutralization_possible({-0.9, 0.0}, rad(kPi), t));
  // Flying through the turret always meets the beam.
  EXPECT_TRUE(turret_neutralization_possible({-10.0, 0.0}, rad(0.0), t));
  EXPECT_THROW(turret_neutralization_time({0.0, 0.0}, rad(0.0), t), DomainError);
}

TEST(TurretOracle, CrossingTheStaticBeam) {
  const TurretThreat t{{0.0, 0.0}, kPi / 2.0, 0.5, 1.0};
  const auto when = turret_neutralization_time({-2.0, 0.5}, rad(0.0), t);
  ASSERT_TRUE(when.has_value());
  EXPECT_LE(*when, 4.0 + 1e-9);
}

}  // namespace
}  // namespace eznav
