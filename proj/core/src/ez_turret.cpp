#include "eznav/ez_turret.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "eznav/errors.hpp"

namespace eznav {

namespace {

constexpr double kGammaTol = 1e-12;

// Signed shortest turn from theta0 to theta_f. Ties at pi resolve to +pi.
double shortest_turn(double theta0, double theta_f) { return wrap_radians(theta_f - theta0); }

bool in_gamma_range(double gamma, double theta0) {
  for (const auto& iv : gamma_range(Angle::radians(theta0))) {
    if (gamma >= iv.lo - kGammaTol && gamma <= iv.hi + kGammaTol) {
      return true;
    }
  }
  return false;
}

TurretBoundaryPoint construct(double gamma, double theta0_rel, const TurretThreat& t) {
  const double theta_f = theta0_rel + gamma;
  TurretBoundaryPoint bp;
  bp.gamma = gamma;
  bp.af = {t.range * std::cos(theta_f), t.range * std::sin(theta_f)};
  // The turret needs |gamma| time units; the agent flew mu |gamma| along x-hat.
  bp.a0 = {bp.af.x - t.mu * std::abs(gamma), bp.af.y};
  return bp;
}

std::vector<TurretBoundaryPoint> sample_in_frame(const TurretThreat& t, double theta0_rel, int n) {
  t.validate();
  if (n < 3) {
    throw ArgumentError("sample_turret_boundary: need at least 3 samples");
  }
  // Both gamma intervals map onto the exit half-circle theta_f in
  // [-pi/2, pi/2]; the join is theta_f = theta0 (gamma = 0) or its
  // antipode (gamma = +-pi).
  double join = (std::cos(theta0_rel) >= 0.0) ? wrap_radians(theta0_rel) : wrap_radians(theta0_rel + kPi);
  join = std::clamp(join, -kPi / 2.0, kPi / 2.0);
  const double len_lower = join + kPi / 2.0;
  const double len_upper = kPi / 2.0 - join;

  std::vector<double> thetas;
  thetas.reserve(static_cast<std::size_t>(n));
  if (len_lower <= 0.0 || len_upper <= 0.0) {
    for (int i = 0; i < n; ++i) {
      thetas.push_back(-kPi / 2.0 + kPi * static_cast<double>(i) / static_cast<double>(n - 1));
    }
  } else {
    // n - 1 steps split between the two intervals, at least one each.
    const int steps = n - 1;
    int lower_steps = static_cast<int>(std::lround(steps * len_lower / kPi));
    lower_steps = std::clamp(lower_steps, 1, steps - 1);
    const int upper_steps = steps - lower_steps;
    for (int i = 0; i < lower_steps; ++i) {
      thetas.push_back(-kPi / 2.0 + len_lower * static_cast<double>(i) / static_cast<double>(lower_steps));
    }
    for (int i = 0; i < upper_steps; ++i) {
      thetas.push_back(join + len_upper * static_cast<double>(i) / static_cast<double>(upper_steps));
    }
    thetas.push_back(kPi / 2.0);
  }

  std::vector<TurretBoundaryPoint> out;
  out.reserve(thetas.size());
  for (double theta_f : thetas) {
    double gamma = shortest_turn(theta0_rel, theta_f);
    // Keep the join on the side of gamma = 0 for the cos > 0 case.
    if (std::abs(gamma) < 1e-15) {
      gamma = 0.0;
    }
    out.push_back(construct(gamma, theta0_rel, t));
  }
  return out;
}

// Agent in the heading frame: starts at (x0, y0), flies +x at speed mu;
// turret at the origin looking along theta0, slewing at 1 rad per time unit.
struct RayProblem {
  double x0;
  double y0;
  double theta0;
  double mu;
  double range;
};

// h(t) = separation(theta0, bearing(t)) - t. `approach_side` selects the
// bearing limit when the agent is exactly on the turret (y0 == 0, x == 0).
double slack_at(const RayProblem& p, double t, int approach_side = 0) {
  const double x = p.x0 + p.mu * t;
  double b = 0.0;
  if (p.y0 == 0.0 && (x == 0.0 || approach_side != 0)) {
    b = approach_side < 0 ? kPi : 0.0;
  } else {
    b = std::atan2(p.y0, x);
  }
  return angular_separation(p.theta0, b) - t;
}

// Value of h at a candidate time together with its gradient with respect to
// (x0, y0, theta0). `dt` is the gradient of the candidate time itself.
struct Slack {
  double value = 0.0;
  std::array<double, 3> grad{};
};

Slack slack_with_grad(const RayProblem& p, double t, const std::array<double, 3>& dt, int side, bool on_beam) {
  Slack out;
  out.value = on_beam ? -t : slack_at(p, t, side);
  const double x = p.x0 + p.mu * t;
  const double r2 = x * x + p.y0 * p.y0;
  double sigma = 0.0;
  if (!on_beam && r2 > 0.0 && side == 0) {
    const double d = wrap_radians(std::atan2(p.y0, x) - p.theta0);
    sigma = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  }
  const double db_dx = r2 > 0.0 ? -p.y0 / r2 : 0.0;
  const double db_dy = r2 > 0.0 ? x / r2 : 0.0;
  const double dh_dt = sigma * p.mu * db_dx - 1.0;
  out.grad = {sigma * db_dx + dh_dt * dt[0], sigma * db_dy + dh_dt * dt[1], -sigma + dh_dt * dt[2]};
  return out;
}

// Minimum of h over the in-range, non-negative part of the ray, or nullopt if
// the ray never enters the range disk at t >= 0.
std::optional<Slack> min_slack(const RayProblem& p) {
  if (std::abs(p.y0) > p.range) {
    return std::nullopt;
  }
  const double half_chord = std::sqrt(std::max(p.range * p.range - p.y0 * p.y0, 0.0));
  const double t_out = (half_chord - p.x0) / p.mu;
  if (t_out < 0.0) {
    return std::nullopt;
  }
  const double t_entry = (-half_chord - p.x0) / p.mu;
  const double t_start = std::max(0.0, t_entry);
  const double dchord = half_chord > 0.0 ? -p.y0 / (p.mu * half_chord) : 0.0;
  constexpr std::array<double, 3> kFixed{};

  // Exit test: the boundary construction. The agent exits at theta_f; the
  // turret needs |gamma| = separation(theta0, theta_f) time units to get
  // there, which is what boundary_point backtracks by.
  Slack best = slack_with_grad(p, t_out, {-1.0 / p.mu, dchord, 0.0}, p.y0 == 0.0 ? +1 : 0, false);
  auto consider = [&](double t, const std::array<double, 3>& dt, int side = 0, bool on_beam = false) {
    if (t >= t_start && t <= t_out) {
      const double v = on_beam ? -t : slack_at(p, t, side);
      if (v < best.value) {
        best = slack_with_grad(p, t, dt, side, on_beam);
      }
    }
  };
  const std::array<double, 3> dstart =
      t_entry > 0.0 ? std::array<double, 3>{-1.0 / p.mu, -dchord, 0.0} : kFixed;
  consider(t_start, dstart, (p.y0 == 0.0 && p.x0 + p.mu * t_start < 0.0) ? -1 : 0);

  if (p.y0 == 0.0) {
    // Ray through the turret: bearing is constant on either side, so h is
    // smallest just before and at the far end.
    const double t_hit = -p.x0 / p.mu;
    consider(t_hit, {-1.0 / p.mu, 0.0, 0.0}, -1);
    consider(t_hit, {-1.0 / p.mu, 0.0, 0.0}, +1);
    return best;
  }

  // Crossing the static beam: zero slew needed there.
  const double s = std::sin(p.theta0);
  const double c = std::cos(p.theta0);
  if (s != 0.0 && p.y0 / s > 0.0) {
    const double x_cross = p.y0 * c / s;
    consider((x_cross - p.x0) / p.mu, {-1.0 / p.mu, c / (s * p.mu), -p.y0 / (s * s * p.mu)}, 0, true);
  }
  // Stationary points of h while the bearing runs away from the beam:
  // |d bearing/dt| = mu |y0| / (x^2 + y0^2) = 1. h is flat in t there.
  const double ay = std::abs(p.y0);
  const double q = p.mu * ay - ay * ay;
  if (q > 0.0) {
    const double xs = std::sqrt(q);
    consider((xs - p.x0) / p.mu, kFixed);
    consider((-xs - p.x0) / p.mu, kFixed);
  }
  return best;
}

// Clearance and its gradient in the heading frame.
Slack frame_clearance(const RayProblem& p) {
  const double sy = p.y0 >= 0.0 ? 1.0 : -1.0;
  const auto slack = min_slack(p);
  if (!slack) {
    if (std::abs(p.y0) > p.range) {
      return {std::abs(p.y0) - p.range, {0.0, sy, 0.0}};
    }
    // Past the disk and flying away from it.
    const double d = std::hypot(p.x0, p.y0);
    return {d - p.range, {p.x0 / d, p.y0 / d, 0.0}};
  }
  const double scaled = p.mu * slack->value;
  if (std::abs(p.y0) - p.range > scaled) {
    return {std::abs(p.y0) - p.range, {0.0, sy, 0.0}};
  }
  return {scaled, {p.mu * slack->grad[0], p.mu * slack->grad[1], p.mu * slack->grad[2]}};
}

RayProblem to_ray(const Point2& agent_pos, double agent_heading, const TurretThreat& t) {
  t.validate();
  if (!is_finite(agent_pos) || !std::isfinite(agent_heading)) {
    throw DomainError("turret: non-finite agent state");
  }
  if (agent_pos == t.position) {
    throw DomainError("turret: agent position coincides with the turret");
  }
  const Point2 rel = rotate(agent_pos - t.position, -agent_heading);
  return {rel.x, rel.y, wrap_radians(t.theta0 - agent_heading), t.mu, t.range};
}

}  // namespace

void TurretThreat::validate() const {
  if (!is_finite(position) || !std::isfinite(theta0) || !std::isfinite(mu) || !std::isfinite(range)) {
    throw ArgumentError("turret: parameters must be finite");
  }
  if (!(mu > 0.0)) {
    throw ArgumentError("turret: mu must be positive");
  }
  if (!(range > 0.0)) {
    throw ArgumentError("turret: range R must be positive");
  }
}

std::vector<GammaInterval> gamma_range(Angle theta0) {
  const double th = wrap_radians(theta0.rad());
  const double c = std::cos(th);
  const double s = std::sin(th);
  if (c >= 0.0) {
    return {{-kPi / 2.0 - th, 0.0}, {0.0, kPi / 2.0 - th}};
  }
  if (s >= 0.0) {
    return {{-kPi, kPi / 2.0 - th}, {3.0 * kPi / 2.0 - th, kPi}};
  }
  return {{-kPi, -3.0 * kPi / 2.0 - th}, {-kPi / 2.0 - th, kPi}};
}

TurretBoundaryPoint boundary_point(double gamma, const TurretThreat& threat) {
  threat.validate();
  if (!std::isfinite(gamma) || !in_gamma_range(gamma, threat.theta0)) {
    throw ArgumentError("boundary_point: gamma outside the admissible range");
  }
  return construct(gamma, wrap_radians(threat.theta0), threat);
}

TurretBoundaryPoint boundary_point(double gamma, const TurretThreat& threat, Angle agent_heading) {
  TurretThreat rel = threat;
  rel.theta0 = wrap_radians(threat.theta0 - agent_heading.rad());
  return boundary_point(gamma, rel);
}

Point2 turret_frame_to_world(const Point2& p, const TurretThreat& threat, Angle agent_heading) {
  return threat.position + rotate(p, agent_heading.rad());
}

std::vector<TurretBoundaryPoint> sample_turret_boundary(const TurretThreat& threat, int n) {
  return sample_in_frame(threat, wrap_radians(threat.theta0), n);
}

std::vector<TurretBoundaryPoint> sample_turret_boundary(const TurretThreat& threat, Angle agent_heading, int n) {
  return sample_in_frame(threat, wrap_radians(threat.theta0 - agent_heading.rad()), n);
}

bool ez_contains_turret(const Point2& agent_pos, Angle agent_heading, const TurretThreat& threat) {
  const RayProblem p = to_ray(agent_pos, agent_heading.rad(), threat);
  const auto slack = min_slack(p);
  return slack.has_value() && slack->value <= 1e-12;
}

double turret_clearance(const Point2& agent_pos, double agent_heading, const TurretThreat& threat) {
  return frame_clearance(to_ray(agent_pos, agent_heading, threat)).value;
}

ClearanceJet turret_clearance_jet(const Point2& agent_pos, double agent_heading, const TurretThreat& threat) {
  const RayProblem p = to_ray(agent_pos, agent_heading, threat);
  const Slack f = frame_clearance(p);
  const double c = std::cos(agent_heading);
  const double s = std::sin(agent_heading);
  ClearanceJet jet;
  jet.value = f.value;
  jet.d_x = f.grad[0] * c - f.grad[1] * s;
  jet.d_y = f.grad[0] * s + f.grad[1] * c;
  // x0 and y0 rotate with the heading; theta0 in the frame decreases with it.
  jet.d_heading = f.grad[0] * p.y0 - f.grad[1] * p.x0 - f.grad[2];
  return jet;
}

}  // namespace eznav
