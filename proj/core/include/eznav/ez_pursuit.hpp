#pragma once

#include <vector>

#include "eznav/geometry.hpp"

namespace eznav {

// Range-limited simple-motion pursuer. Lengths are in the scenario's units;
// the pursuer's speed is normalised to 1 so `mu` is the agent speed.
struct PursuerThreat {
  Point2 position;
  double mu = 1.0;              // v_A / v_P
  double range = 1.0;           // total path length R available to the pursuer
  double capture_radius = 0.0;  // r

  // Throws ArgumentError unless mu > 0, range > 0, capture_radius >= 0 and
  // everything is finite.
  void validate() const;
};

struct EzBoundarySample {
  Angle xi;
  double rho = 0.0;
  Point2 point;  // agent initial position on the EZ boundary (world frame)
};

// Boundary radius for a fast pursuer (mu <= 1): collision course of length
// exactly R ends with the agent at distance R + r.
double rho_fast(Angle xi, const PursuerThreat& threat);

// Boundary radius for a slow pursuer (mu > 1): collision-course branch up to
// the crossover angle, then the zero-closing-rate ("touch and go") branch up
// to pi - acos(1/mu), then the capture radius.
double rho_slow(Angle xi, const PursuerThreat& threat);

// Positive aspect angle where the two slow-pursuer branches meet.
Angle xi_crossover(const PursuerThreat& threat);

// Largest |xi| on the touch-and-go branch: pi - acos(1/mu).
double xi_touch_limit(const PursuerThreat& threat);

// The individual slow-pursuer branches, exposed for continuity checks.
double rho_collision_branch(double xi, const PursuerThreat& threat);
double rho_touch_branch(double xi, const PursuerThreat& threat);

// Dispatches on mu: rho_fast for mu <= 1, rho_slow otherwise. Even in xi.
double rho(Angle xi, const PursuerThreat& threat);

// Membership of the engagement zone for an agent at `agent_pos` holding
// `agent_heading`. Boundary counts as inside.
bool ez_contains(const Point2& agent_pos, Angle agent_heading, const PursuerThreat& threat);

// distance(agent, P0) - rho(xi). Positive outside the EZ.
double signed_clearance(const Point2& agent_pos, Angle agent_heading, const PursuerThreat& threat);

// Signed clearance together with its partial derivatives with respect to the
// agent position and heading.
struct ClearanceJet {
  double value = 0.0;
  double d_x = 0.0;
  double d_y = 0.0;
  double d_heading = 0.0;
};
ClearanceJet signed_clearance_jet(const Point2& agent_pos, double agent_heading, const PursuerThreat& threat);

// n boundary points for a fixed agent heading, xi uniformly spanning
// [-pi, pi] (both ends included).
std::vector<EzBoundarySample> sample_boundary(const PursuerThreat& threat, Angle agent_heading, int n);

// Cardioid-like legacy EZ model with matched end points.
double rho_legacy(Angle xi, double rho_max, double rho_min);

}  // namespace eznav
