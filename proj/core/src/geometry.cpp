#include "eznav/geometry.hpp"

#include <algorithm>
#include <limits>

#include "eznav/errors.hpp"

namespace eznav {

double wrap_radians(double radians) {
  if (!std::isfinite(radians)) {
    throw DomainError("wrap_angle: non-finite angle");
  }
  double r = std::remainder(radians, kTwoPi);
  // remainder() lands on [-pi, pi]; rounding in the reduction can leave a
  // value a few ulps above -pi for inputs that are odd multiples of pi.
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(radians), kPi);
  if (r <= -kPi + slack) {
    r = kPi;
  }
  return r;
}

Angle wrap_angle(double radians) { return Angle::radians(wrap_radians(radians)); }

Angle Angle::wrapped() const { return wrap_angle(value_); }

double angular_separation(double a, double b) { return std::abs(wrap_radians(a - b)); }

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double bearing(const Point2& from, const Point2& to) { return std::atan2(to.y - from.y, to.x - from.x); }

bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Angle aspect_angle(const Point2& agent_pos, Angle agent_heading, const Point2& threat_pos) {
  if (!is_finite(agent_pos) || !is_finite(threat_pos) || !std::isfinite(agent_heading.rad())) {
    throw DomainError("aspect_angle: non-finite input");
  }
  if (agent_pos == threat_pos) {
    throw DomainError("aspect_angle: agent and threat positions coincide");
  }
  return wrap_angle(agent_heading.rad() - bearing(agent_pos, threat_pos));
}

}  // namespace eznav
