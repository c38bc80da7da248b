#include "eznav/engagement_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "eznav/errors.hpp"

namespace eznav {

namespace {

// Golden-section search for a minimum of f on [lo, hi].
double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters, double* arg) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  if (arg) {
    *arg = x;
  }
  return fx;
}

// Earliest t in [lo, hi] with slack(t) <= tol, where slack(lo) > tol and
// slack(hi) <= tol.
double first_crossing(const std::function<double(double)>& slack, double lo, double hi, double tol, int iters) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (slack(mid) <= tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Scans slack(t) on [t0, t1] with `steps` uniform intervals and returns the
// earliest time with slack <= tol. Between samples, the neighbourhood of the
// smallest sample is refined so narrow dips are not stepped over.
std::optional<double> earliest_nonpositive(const std::function<double(double)>& slack, double t0, double t1,
                                           int steps, double tol, const OracleOptions& opts) {
  const double dt = (t1 - t0) / static_cast<double>(steps);
  double prev_t = t0;
  double prev_v = slack(t0);
  if (prev_v <= tol) {
    return t0;
  }
  double min_v = prev_v;
  int min_i = 0;
  for (int i = 1; i <= steps; ++i) {
    const double t = (i == steps) ? t1 : t0 + dt * static_cast<double>(i);
    const double v = slack(t);
    if (v <= tol) {
      return first_crossing(slack, prev_t, t, tol, opts.bisection_iterations);
    }
    if (v < min_v) {
      min_v = v;
      min_i = i;
    }
    prev_t = t;
    prev_v = v;
  }
  // Local refinement around every sample that is a discrete local minimum
  // would be exhaustive; the smallest sample is where a dip can hide.
  const double lo = std::max(t0, t0 + dt * static_cast<double>(min_i - 1));
  const double hi = std::min(t1, t0 + dt * static_cast<double>(min_i + 1));
  double t_min = lo;
  const double v_min = golden_min(slack, lo, hi, 80, &t_min);
  if (v_min <= tol) {
    return first_crossing(slack, lo, t_min, tol, opts.bisection_iterations);
  }
  return std::nullopt;
}

}  // namespace

std::optional<CaptureCertificate> pursuit_capture_certificate(const Point2& a0, Angle heading,
                                                              const PursuerThreat& threat,
                                                              const OracleOptions& opts) {
  threat.validate();
  if (!is_finite(a0) || !std::isfinite(heading.rad())) {
    throw DomainError("pursuit oracle: non-finite agent state");
  }
  if (a0 == threat.position) {
    throw DomainError("pursuit oracle: agent starts on the pursuer");
  }
  const Point2 vel = unit_vector(heading.rad()) * threat.mu;
  const double r = threat.capture_radius;
  const double tol = opts.boundary_tolerance * threat.range;
  // Pursuer reach at time t is a disk of radius t (speed 1) until the range
  // R is exhausted; after that it is out of the engagement.
  auto slack = [&](double t) { return distance(a0 + vel * t, threat.position) - t - r; };

  const double horizon = threat.range;
  const int steps = std::max(16, static_cast<int>(std::ceil(1.0 / opts.scan_fraction)));
  const auto t = earliest_nonpositive(slack, 0.0, horizon, steps, tol, opts);
  if (!t) {
    return std::nullopt;
  }
  return CaptureCertificate{*t, *t};
}

bool pursuit_capture_possible(const Point2& a0, Angle heading, const PursuerThreat& threat,
                              const OracleOptions& opts) {
  return pursuit_capture_certificate(a0, heading, threat, opts).has_value();
}

std::optional<double> turret_neutralization_time(const Point2& a0, Angle heading, const TurretThreat& threat,
                                                 const OracleOptions& opts) {
  threat.validate();
  if (!is_finite(a0) || !std::isfinite(heading.rad())) {
    throw DomainError("turret oracle: non-finite agent state");
  }
  if (a0 == threat.position) {
    throw DomainError("turret oracle: agent starts on the turret");
  }
  const Point2 dir = unit_vector(heading.rad());
  const Point2 vel = dir * threat.mu;
  const Point2 rel = a0 - threat.position;

  // Times at which |rel + vel t| = R.
  const double b = rel.dot(dir);
  const double c = rel.dot(rel) - threat.range * threat.range;
  const double disc = b * b - c;
  if (disc < 0.0) {
    return std::nullopt;
  }
  const double root = std::sqrt(disc);
  const double t_in = std::max(0.0, (-b - root) / threat.mu);
  const double t_out = (-b + root) / threat.mu;
  if (t_out < 0.0) {
    return std::nullopt;
  }
  const double tol = opts.boundary_tolerance * threat.range;

  auto slack = [&](double t) {
    const Point2 p = rel + vel * t;
    // Outside the range disk the turret cannot neutralise.
    const double outside = std::max(p.norm() - threat.range, 0.0);
    // Exactly on the turret the bearing is undefined; use the approach
    // direction.
    const double b = (p.x == 0.0 && p.y == 0.0) ? heading.rad() + kPi : std::atan2(p.y, p.x);
    const double sep = angular_separation(threat.theta0, b);
    return sep - t + 1e3 * outside;
  };

  const double span = t_out - t_in;
  const double max_step = opts.turret_step * threat.range / threat.mu;
  int steps = static_cast<int>(std::ceil(span / std::max(max_step, 1e-300)));
  steps = std::clamp(steps, static_cast<int>(std::ceil(1.0 / opts.scan_fraction)), 4'000'000);
  return earliest_nonpositive(slack, t_in, t_out, steps, tol, opts);
}

bool turret_neutralization_possible(const Point2& a0, Angle heading, const TurretThreat& threat,
                                    const OracleOptions& opts) {
  return turret_neutralization_time(a0, heading, threat, opts).has_value();
}

}  // namespace eznav
