#pragma once

#include <optional>

#include "eznav/ez_pursuit.hpp"
#include "eznav/ez_turret.hpp"
#include "eznav/geometry.hpp"

namespace eznav {

// Brute-force engagement checks. These simulate the straight-line agent
// against the threat's reachable set over time and never evaluate the
// closed-form EZ radius; they are the reference the EZ formulas are tested
// against.
struct OracleOptions {
  // Scan step as a fraction of the time horizon.
  double scan_fraction = 1e-3;
  // Upper bound on the absolute turret scan step, in units of R / v_A.
  double turret_step = 1e-4;
  int bisection_iterations = 60;
  // Capture/neutralisation comparisons accept this much slack, relative to R.
  double boundary_tolerance = 1e-12;
};

struct CaptureCertificate {
  double time = 0.0;                  // earliest capture time
  double pursuer_path_length = 0.0;   // v_P * time (v_P = 1)
};

// Earliest capture of an agent starting at `a0` with constant `heading`. The
// pursuer (speed 1) can be anywhere within distance t of P0 at time t, until
// its range R is used up; capture means coming within r.
std::optional<CaptureCertificate> pursuit_capture_certificate(const Point2& a0, Angle heading,
                                                              const PursuerThreat& threat,
                                                              const OracleOptions& opts = {});

bool pursuit_capture_possible(const Point2& a0, Angle heading, const PursuerThreat& threat,
                              const OracleOptions& opts = {});

// Earliest neutralisation time by a turret slewing at unit rate.
std::optional<double> turret_neutralization_time(const Point2& a0, Angle heading, const TurretThreat& threat,
                                                 const OracleOptions& opts = {});

bool turret_neutralization_possible(const Point2& a0, Angle heading, const TurretThreat& threat,
                                    const OracleOptions& opts = {});

}  // namespace eznav
