#pragma once

#include <vector>

#include "eznav/ez_pursuit.hpp"
#include "eznav/geometry.hpp"

namespace eznav {

// Stationary turret with bounded slew rate and finite range. The slew rate
// is normalised to 1 rad per time unit, so `mu` is the agent speed.
//
// `theta0` is the initial look angle in the world frame. The boundary
// construction works in the agent-heading frame (x-hat along the heading,
// origin at the turret); with agent heading 0 the two coincide.
struct TurretThreat {
  Point2 position;
  double theta0 = 0.0;
  double mu = 1.0;     // v_A / omega_bar
  double range = 1.0;  // R

  void validate() const;
};

struct GammaInterval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Exit-boundary sample in the heading frame (turret at the origin).
struct TurretBoundaryPoint {
  double gamma = 0.0;  // signed turret traversal, shortest direction
  Point2 a0;           // agent initial position
  Point2 af;           // neutralisation point on the range circle
};

// Admissible traversal angles for a look angle `theta0` given in the heading
// frame: the final look angle theta0 + gamma lands on the exit half-circle.
// cos(theta0) == 0 is treated as the limit of the cos(theta0) > 0 case.
std::vector<GammaInterval> gamma_range(Angle theta0);

// Boundary point for traversal `gamma`, with threat.theta0 interpreted in the
// heading frame (agent heading 0). Throws ArgumentError if gamma is outside
// gamma_range.
TurretBoundaryPoint boundary_point(double gamma, const TurretThreat& threat);

// Same construction for an agent flying `agent_heading` in the world frame.
TurretBoundaryPoint boundary_point(double gamma, const TurretThreat& threat, Angle agent_heading);

// Heading-frame point -> world frame.
Point2 turret_frame_to_world(const Point2& p, const TurretThreat& threat, Angle agent_heading);

// n exit-boundary points: both end points and the join of the two gamma
// intervals are always included, remaining samples spread uniformly over
// each interval in proportion to its length.
std::vector<TurretBoundaryPoint> sample_turret_boundary(const TurretThreat& threat, int n);
std::vector<TurretBoundaryPoint> sample_turret_boundary(const TurretThreat& threat, Angle agent_heading, int n);

// True iff some t >= 0 has the agent inside the range disk while the turret,
// slewing at its maximum rate in the shortest direction, can be looking at
// it. Boundary counts as inside.
bool ez_contains_turret(const Point2& agent_pos, Angle agent_heading, const TurretThreat& threat);

// Continuous margin in length units: mu * min over the in-range portion of
// the ray of (angular separation - elapsed time), or the clearance from the
// range disk when the ray never reaches it. Non-negative outside the EZ up
// to rounding; negative inside.
double turret_clearance(const Point2& agent_pos, double agent_heading, const TurretThreat& threat);

// turret_clearance with its gradient. One-sided where the minimising time
// switches between candidates.
ClearanceJet turret_clearance_jet(const Point2& agent_pos, double agent_heading, const TurretThreat& threat);

}  // namespace eznav
