#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eznav/geometry.hpp"
#include "eznav/threat.hpp"
#include "eznav/trajectory.hpp"
#include "eznav/transcription.hpp"

namespace eznav {

struct AgentConfig {
  Point2 start;
  Point2 goal;
  double speed = 1.0;

  friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

enum class Initialization { kStraightLine, kCircumnavReach, kCustom };

struct PlannerOptions {
  int n_nodes = 100;
  double constraint_tolerance = 1e-6;
  double opt_tolerance = 1e-8;
  int max_iterations = 500;
  Initialization initialization = Initialization::kStraightLine;
  // kSegments bounds the clearance along every segment, kNodes only at the
  // nodes (the plain even-collocation reading).
  ConstraintPlacement constraint_placement = ConstraintPlacement::kSegments;
  // Required for kCustom: any polyline from start to goal; it is resampled
  // to n_nodes equal chords.
  std::optional<std::vector<Point2>> custom_path;

  void validate() const;
};

struct Scenario {
  AgentConfig agent;
  std::vector<Threat> threats;
  PlannerOptions options;

  void validate() const;
};

struct PlanResult {
  Trajectory trajectory;
  double t_f = 0.0;
  bool converged = false;
  double min_clearance = 0.0;  // over all clearance constraint rows
  int iterations = 0;
  double constraint_violation = 0.0;
  double stationarity = 0.0;
};

// Minimum-time plan with clearance constraints placed per
// options.constraint_placement. Throws InfeasibleError
// when an end point lies inside a threat's capturability disk (pursuer:
// R + r, turret: R).
PlanResult plan(const Scenario& scenario);

// Warm start for `mode` with scenario.options.n_nodes nodes. circumnav_reach
// goes around the first threat on its capturability circle.
Trajectory initialize(const Scenario& scenario, Initialization mode);

struct VerificationReport {
  std::size_t samples = 0;
  double worst_clearance = 0.0;
  Point2 worst_point;
  // Dense points where the oracle and the clearance sign disagree by more
  // than the constraint tolerance.
  std::size_t oracle_disagreements = 0;
  // Dense points with clearance > tolerance that the oracle still captures.
  std::size_t oracle_unsafe = 0;
};

// Splits each segment into `factor` pieces and evaluates clearance and the
// engagement oracle at every dense point (with the segment heading).
VerificationReport resample_and_verify(const PlanResult& result, const Scenario& scenario, int factor,
                                       bool run_oracle = true);

std::string to_string(Initialization mode);
Initialization initialization_from_string(const std::string& s);
std::string to_string(ConstraintPlacement placement);
ConstraintPlacement placement_from_string(const std::string& s);

}  // namespace eznav
