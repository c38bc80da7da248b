#include "eznav/circumnav.hpp"

#include <algorithm>
#include <cmath>

#include "eznav/errors.hpp"

namespace eznav {

namespace {

double positive_mod(double a, double m) {
  double r = std::fmod(a, m);
  if (r < 0.0) {
    r += m;
  }
  return r;
}

// Distance from c to the segment [a, b].
double segment_distance(const Point2& a, const Point2& b, const Point2& c) {
  const Point2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) {
    return distance(a, c);
  }
  const double s = std::clamp((c - a).dot(ab) / len2, 0.0, 1.0);
  return distance(a + ab * s, c);
}

Trajectory polyline_trajectory(const std::vector<Point2>& pts, double speed) {
  Trajectory traj;
  traj.points = pts;
  traj.times.reserve(pts.size());
  traj.times.push_back(0.0);
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double len = distance(pts[k], pts[k + 1]);
    s += len;
    traj.times.push_back(s / speed);
    traj.headings.push_back(bearing(pts[k], pts[k + 1]));
  }
  return traj;
}

}  // namespace

CircumnavResult circumnavigate(const Point2& a0, const Point2& af, const Point2& threat_pos,
                               const CircumnavSpec& spec, double mu, const CircumnavOptions& opts) {
  if (!(spec.radius > 0.0) || !std::isfinite(spec.radius)) {
    throw ArgumentError("circumnavigate: radius must be positive");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ArgumentError("circumnavigate: speed must be positive");
  }
  if (!(opts.arc_step > 0.0)) {
    throw ArgumentError("circumnavigate: arc_step must be positive");
  }
  const double rh = spec.radius;
  const Point2 p0 = a0 - threat_pos;
  const Point2 pf = af - threat_pos;
  const double d0 = p0.norm();
  const double df = pf.norm();
  if (d0 <= rh || df <= rh) {
    throw InfeasibleError("circumnavigate: end point inside the circumnavigation circle (" + spec.label + ")");
  }

  CircumnavResult res;
  if (segment_distance(a0, af, threat_pos) >= rh) {
    res.blocked = false;
    res.tangent_in = distance(a0, af);
    res.t_f = res.tangent_in / mu;
    res.path = polyline_trajectory({a0, af}, mu);
    return res;
  }

  const double phi0 = std::atan2(p0.y, p0.x);
  const double phif = std::atan2(pf.y, pf.x);
  const double beta0 = std::acos(rh / d0);
  const double betaf = std::acos(rh / df);
  // Squared distances under the radicals: Pythagorean tangent lengths.
  res.tangent_in = std::sqrt(d0 * d0 - rh * rh);
  res.tangent_out = std::sqrt(df * df - rh * rh);

  // Clockwise wrap: theta1 = phi0 - beta0, theta2 = phif + betaf.
  const double cw_t1 = phi0 - beta0;
  const double cw_t2 = phif + betaf;
  const double cw_arc = positive_mod(cw_t1 - cw_t2, kTwoPi);
  // Mirrored (counter-clockwise) solution.
  const double ccw_t1 = phi0 + beta0;
  const double ccw_t2 = phif - betaf;
  const double ccw_arc = positive_mod(ccw_t2 - ccw_t1, kTwoPi);

  // Ties go clockwise.
  res.clockwise = cw_arc <= ccw_arc + 1e-12;
  const double arc = res.clockwise ? cw_arc : ccw_arc;
  res.theta1 = wrap_radians(res.clockwise ? cw_t1 : ccw_t1);
  res.theta2 = wrap_radians(res.clockwise ? cw_t2 : ccw_t2);
  res.arc_length = rh * arc;
  res.t_f = (res.tangent_in + res.tangent_out + res.arc_length) / mu;

  std::vector<Point2> pts;
  pts.push_back(a0);
  const int arc_steps = std::max(1, static_cast<int>(std::ceil(arc / opts.arc_step)));
  const double dir = res.clockwise ? -1.0 : 1.0;
  const double start = res.clockwise ? cw_t1 : ccw_t1;
  for (int i = 0; i <= arc_steps; ++i) {
    const double ang = start + dir * arc * static_cast<double>(i) / static_cast<double>(arc_steps);
    pts.push_back(threat_pos + unit_vector(ang) * rh);
  }
  pts.push_back(af);
  res.path = polyline_trajectory(pts, mu);
  return res;
}

std::vector<CircumnavSpec> standard_specs(const PursuerThreat& threat, ReachRadius reach,
                                          std::vector<std::string>* warnings) {
  threat.validate();
  const double big_r = threat.range;
  const double r = threat.capture_radius;
  std::vector<CircumnavSpec> specs;
  const double reach_radius = reach == ReachRadius::kCapturability ? big_r + r : big_r;
  specs.push_back({"Reach", reach_radius});
  specs.push_back({"Worst", (1.0 + threat.mu) * big_r + r});
  const double apol = (1.0 - threat.mu) * big_r + r;
  if (apol > 0.0) {
    specs.push_back({"Apol", apol});
  } else if (warnings) {
    warnings->push_back("Apol baseline omitted: (1 - mu) R + r <= 0");
  }
  return specs;
}

double percent_difference(double t_ez, double t_circ) {
  if (!(t_circ > 0.0) || !std::isfinite(t_circ) || !std::isfinite(t_ez)) {
    throw ArgumentError("percent_difference: circumnavigation time must be positive");
  }
  return 100.0 * (t_ez - t_circ) / t_circ;
}

}  // namespace eznav
