#include "eznav/ez_pursuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eznav/errors.hpp"

namespace eznav {

namespace {

constexpr double kRadicandClamp = 1e-14;

void check_xi(double xi, const char* who) {
  if (!std::isfinite(xi)) {
    throw DomainError(std::string(who) + ": non-finite aspect angle");
  }
  if (std::abs(xi) > kPi * (1.0 + 1e-15)) {
    throw PreconditionError(std::string(who) + ": aspect angle outside [-pi, pi]");
  }
}

// Radicand of the collision-course boundary in length units,
// (mu R)^2 (cos^2 xi - 1) + (R + r)^2, clamped at zero within rounding.
double collision_radicand(double cos_xi, const PursuerThreat& t) {
  const double m = t.mu * t.range;
  const double s = t.range + t.capture_radius;
  double rad = m * m * (cos_xi * cos_xi - 1.0) + s * s;
  if (rad < 0.0 && rad > -kRadicandClamp * m * m) {
    rad = 0.0;
  }
  return rad;
}

// Collision-course boundary written in terms of cos(xi); this form is smooth
// across xi = +-pi.
double collision_rho(double cos_xi, const PursuerThreat& t) {
  return t.mu * t.range * cos_xi + std::sqrt(std::max(collision_radicand(cos_xi, t), 0.0));
}

double collision_rho_dcos(double cos_xi, const PursuerThreat& t) {
  const double m = t.mu * t.range;
  const double root = std::sqrt(std::max(collision_radicand(cos_xi, t), 0.0));
  if (root == 0.0) {
    return m;
  }
  return m * (1.0 + m * cos_xi / root);
}

// Touch-and-go branch and its derivative in |xi|.
double touch_rho(double abs_xi, const PursuerThreat& t) {
  const double s = std::sqrt(t.mu * t.mu - 1.0);
  const double usable = std::acos(1.0 / t.mu);
  const double den = t.mu * std::sin(abs_xi) - std::sin(abs_xi + usable);
  return t.capture_radius * s / den;
}

double touch_rho_dxi(double abs_xi, const PursuerThreat& t) {
  const double s = std::sqrt(t.mu * t.mu - 1.0);
  const double usable = std::acos(1.0 / t.mu);
  const double den = t.mu * std::sin(abs_xi) - std::sin(abs_xi + usable);
  const double dden = t.mu * std::cos(abs_xi) - std::cos(abs_xi + usable);
  return -t.capture_radius * s * dden / (den * den);
}

enum class SlowBranch { kCollision, kTouch, kCapture };

SlowBranch slow_branch(double abs_xi, const PursuerThreat& t) {
  if (abs_xi <= xi_crossover(t).rad()) {
    return SlowBranch::kCollision;
  }
  if (abs_xi <= xi_touch_limit(t)) {
    return SlowBranch::kTouch;
  }
  return SlowBranch::kCapture;
}

}  // namespace

void PursuerThreat::validate() const {
  if (!is_finite(position) || !std::isfinite(mu) || !std::isfinite(range) || !std::isfinite(capture_radius)) {
    throw ArgumentError("pursuer: parameters must be finite");
  }
  if (!(mu > 0.0)) {
    throw ArgumentError("pursuer: mu must be positive");
  }
  if (!(range > 0.0)) {
    throw ArgumentError("pursuer: range R must be positive");
  }
  if (!(capture_radius >= 0.0)) {
    throw ArgumentError("pursuer: capture radius r must be non-negative");
  }
}

double rho_fast(Angle xi, const PursuerThreat& threat) {
  threat.validate();
  check_xi(xi.rad(), "rho_fast");
  if (threat.mu > 1.0) {
    throw PreconditionError("rho_fast: requires mu <= 1");
  }
  return collision_rho(std::cos(xi.rad()), threat);
}

Angle xi_crossover(const PursuerThreat& threat) {
  threat.validate();
  if (threat.mu <= 1.0) {
    throw PreconditionError("xi_crossover: requires mu > 1");
  }
  const double mu = threat.mu;
  const double big_r = threat.range;
  const double sum = threat.range + threat.capture_radius;
  // Law of sines in the triangle (P0, A0, A(R)) with the touch-and-go angle
  // acos(1/mu) at the capture point. atan2 keeps the obtuse root that
  // appears when mu^2 R < R + r.
  return Angle::radians(std::atan2(sum * std::sqrt(mu * mu - 1.0), mu * mu * big_r - sum));
}

double xi_touch_limit(const PursuerThreat& threat) {
  threat.validate();
  if (threat.mu <= 1.0) {
    throw PreconditionError("xi_touch_limit: requires mu > 1");
  }
  return kPi - std::acos(1.0 / threat.mu);
}

double rho_collision_branch(double xi, const PursuerThreat& threat) {
  threat.validate();
  return collision_rho(std::cos(xi), threat);
}

double rho_touch_branch(double xi, const PursuerThreat& threat) {
  threat.validate();
  if (threat.mu <= 1.0) {
    throw PreconditionError("rho_touch_branch: requires mu > 1");
  }
  return touch_rho(std::abs(xi), threat);
}

double rho_slow(Angle xi, const PursuerThreat& threat) {
  threat.validate();
  check_xi(xi.rad(), "rho_slow");
  if (threat.mu <= 1.0) {
    throw PreconditionError("rho_slow: requires mu > 1");
  }
  const double abs_xi = std::min(std::abs(xi.rad()), kPi);
  switch (slow_branch(abs_xi, threat)) {
    case SlowBranch::kCollision:
      return collision_rho(std::cos(abs_xi), threat);
    case SlowBranch::kTouch:
      return std::max(touch_rho(abs_xi, threat), threat.capture_radius);
    case SlowBranch::kCapture:
      break;
  }
  return threat.capture_radius;
}

double rho(Angle xi, const PursuerThreat& threat) {
  return threat.mu <= 1.0 ? rho_fast(xi, threat) : rho_slow(xi, threat);
}

bool ez_contains(const Point2& agent_pos, Angle agent_heading, const PursuerThreat& threat) {
  return signed_clearance(agent_pos, agent_heading, threat) <= 0.0;
}

double signed_clearance(const Point2& agent_pos, Angle agent_heading, const PursuerThreat& threat) {
  const Angle xi = aspect_angle(agent_pos, agent_heading, threat.position);
  return distance(agent_pos, threat.position) - rho(xi, threat);
}

ClearanceJet signed_clearance_jet(const Point2& agent_pos, double agent_heading, const PursuerThreat& threat) {
  threat.validate();
  if (!is_finite(agent_pos) || !std::isfinite(agent_heading)) {
    throw DomainError("signed_clearance_jet: non-finite input");
  }
  const Point2 los = threat.position - agent_pos;
  const double dist = los.norm();
  if (dist == 0.0) {
    throw DomainError("signed_clearance_jet: agent and threat positions coincide");
  }
  const Point2 u = los * (1.0 / dist);
  const Point2 h = unit_vector(agent_heading);
  const Point2 h_perp{-h.y, h.x};
  const double c = std::clamp(h.dot(u), -1.0, 1.0);

  // d(cos xi)/d(agent position) and d(cos xi)/d(heading).
  const Point2 dc_dp = (h - u * c) * (-1.0 / dist);
  const double dc_dpsi = h_perp.dot(u);

  double value_rho = 0.0;
  double drho_dc = 0.0;
  if (threat.mu <= 1.0) {
    value_rho = collision_rho(c, threat);
    drho_dc = collision_rho_dcos(c, threat);
  } else {
    const double abs_xi = std::acos(c);
    switch (slow_branch(abs_xi, threat)) {
      case SlowBranch::kCollision:
        value_rho = collision_rho(c, threat);
        drho_dc = collision_rho_dcos(c, threat);
        break;
      case SlowBranch::kTouch: {
        value_rho = touch_rho(abs_xi, threat);
        if (value_rho < threat.capture_radius) {
          value_rho = threat.capture_radius;
        } else {
          // d|xi|/dc = -1/sin|xi|; sin|xi| > 0 strictly inside this branch.
          drho_dc = -touch_rho_dxi(abs_xi, threat) / std::sin(abs_xi);
        }
        break;
      }
      case SlowBranch::kCapture:
        value_rho = threat.capture_radius;
        break;
    }
  }

  ClearanceJet jet;
  jet.value = dist - value_rho;
  // d(dist)/d(agent) = -u.
  jet.d_x = -u.x - drho_dc * dc_dp.x;
  jet.d_y = -u.y - drho_dc * dc_dp.y;
  jet.d_heading = -drho_dc * dc_dpsi;
  return jet;
}

std::vector<EzBoundarySample> sample_boundary(const PursuerThreat& threat, Angle agent_heading, int n) {
  threat.validate();
  if (n < 3) {
    throw ArgumentError("sample_boundary: need at least 3 samples");
  }
  std::vector<EzBoundarySample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double xi = -kPi + kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1);
    if (i == n - 1) {
      xi = kPi;
    }
    const double r = rho(Angle::radians(xi), threat);
    // The line of sight from the agent to P0 has bearing psi - xi, so the
    // agent sits at the opposite bearing from P0.
    const double los = agent_heading.rad() - xi;
    const Point2 point = threat.position - unit_vector(los) * r;
    out.push_back({Angle::radians(xi), r, point});
  }
  return out;
}

double rho_legacy(Angle xi, double rho_max, double rho_min) {
  if (!std::isfinite(xi.rad()) || !std::isfinite(rho_max) || !std::isfinite(rho_min)) {
    throw DomainError("rho_legacy: non-finite input");
  }
  if (rho_max < rho_min || rho_min < 0.0) {
    throw ArgumentError("rho_legacy: need rho_max >= rho_min >= 0");
  }
  return 0.5 * (std::cos(xi.rad()) + 1.0) * (rho_max - rho_min) + rho_min;
}

}  // namespace eznav
