#pragma once

#include <string>
#include <vector>

#include "eznav/ez_pursuit.hpp"
#include "eznav/geometry.hpp"
#include "eznav/trajectory.hpp"

namespace eznav {

struct CircumnavSpec {
  std::string label;
  double radius = 0.0;  // R-hat
};

struct CircumnavResult {
  double t_f = 0.0;
  // Tangent-point angles in the threat-centred frame.
  double theta1 = 0.0;
  double theta2 = 0.0;
  double tangent_in = 0.0;
  double tangent_out = 0.0;
  double arc_length = 0.0;
  // false when the chord a0 -> af misses the open disk; the result is then
  // the straight chord with an empty arc.
  bool blocked = true;
  bool clockwise = true;
  Trajectory path;
};

struct CircumnavOptions {
  // Maximum angular step between arc vertices of the emitted path.
  double arc_step = 1e-3;
};

// Minimum-time tangent-arc-tangent path around a circle of radius
// spec.radius centred on `threat_pos`, flown at speed `mu`. Both wrap
// directions are evaluated and the shorter is returned.
CircumnavResult circumnavigate(const Point2& a0, const Point2& af, const Point2& threat_pos,
                               const CircumnavSpec& spec, double mu, const CircumnavOptions& opts = {});

enum class ReachRadius {
  kCapturability,  // R + r
  kRangeOnly,      // R
};

// Reach, Worst and Apol baselines for a pursuer. Apol is omitted (and a
// message appended to `warnings`, when given) if (1 - mu) R + r <= 0.
std::vector<CircumnavSpec> standard_specs(const PursuerThreat& threat,
                                          ReachRadius reach = ReachRadius::kCapturability,
                                          std::vector<std::string>* warnings = nullptr);

// 100 (t_ez - t_circ) / t_circ.
double percent_difference(double t_ez, double t_circ);

}  // namespace eznav
