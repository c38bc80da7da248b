#include "eznav/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eznav/circumnav.hpp"
#include "eznav/errors.hpp"
#include "eznav/sqp_solver.hpp"
#include "eznav/transcription.hpp"

namespace eznav {

namespace {

// Heading offset applied to an obstructed straight-line start so the solver
// does not sit on the symmetric saddle through the threat.
constexpr double kTentOffset = 0.05;

double capturability_radius(const Threat& threat) {
  if (const auto* p = std::get_if<PursuerThreat>(&threat)) {
    return p->range + p->capture_radius;
  }
  return std::get<TurretThreat>(threat).range;
}

bool chord_obstructed(const Scenario& s) {
  const Point2 a = s.agent.start;
  const Point2 b = s.agent.goal;
  const double heading = bearing(a, b);
  const int n = s.options.n_nodes;
  for (int k = 0; k < n; ++k) {
    const Point2 p = a + (b - a) * (static_cast<double>(k) / static_cast<double>(n - 1));
    for (const Threat& t : s.threats) {
      if (threat_clearance(p, heading, t) < 0.0) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

void PlannerOptions::validate() const {
  if (n_nodes < 3) {
    throw ArgumentError("planner options: n_nodes must be at least 3");
  }
  if (!(constraint_tolerance > 0.0) || !(opt_tolerance > 0.0)) {
    throw ArgumentError("planner options: tolerances must be positive");
  }
  if (max_iterations < 1) {
    throw ArgumentError("planner options: max_iterations must be positive");
  }
}

void Scenario::validate() const {
  options.validate();
  if (!is_finite(agent.start) || !is_finite(agent.goal)) {
    throw ArgumentError("scenario: non-finite agent end points");
  }
  if (agent.start == agent.goal) {
    throw ArgumentError("scenario: start and goal coincide");
  }
  if (!(agent.speed > 0.0) || !std::isfinite(agent.speed)) {
    throw ArgumentError("scenario: agent speed must be positive");
  }
  for (const Threat& t : threats) {
    validate_threat(t);
  }
}

std::string to_string(Initialization mode) {
  switch (mode) {
    case Initialization::kStraightLine:
      return "straight_line";
    case Initialization::kCircumnavReach:
      return "circumnav_reach";
    case Initialization::kCustom:
      return "custom";
  }
  return "straight_line";
}

Initialization initialization_from_string(const std::string& s) {
  if (s == "straight_line") {
    return Initialization::kStraightLine;
  }
  if (s == "circumnav_reach") {
    return Initialization::kCircumnavReach;
  }
  if (s == "custom") {
    return Initialization::kCustom;
  }
  throw ArgumentError("unknown initialization '" + s + "'");
}

std::string to_string(ConstraintPlacement placement) {
  return placement == ConstraintPlacement::kNodes ? "nodes" : "segments";
}

ConstraintPlacement placement_from_string(const std::string& s) {
  if (s == "nodes") {
    return ConstraintPlacement::kNodes;
  }
  if (s == "segments") {
    return ConstraintPlacement::kSegments;
  }
  throw ArgumentError("unknown constraint placement '" + s + "'");
}

Trajectory initialize(const Scenario& scenario, Initialization mode) {
  scenario.validate();
  const auto segments = static_cast<std::size_t>(scenario.options.n_nodes - 1);
  const Point2 a0 = scenario.agent.start;
  const Point2 af = scenario.agent.goal;
  const double v = scenario.agent.speed;
  switch (mode) {
    case Initialization::kStraightLine: {
      const std::vector<double> headings(segments, bearing(a0, af));
      return chain_headings(a0, headings, distance(a0, af) / v, v);
    }
    case Initialization::kCircumnavReach: {
      if (scenario.threats.empty()) {
        return initialize(scenario, Initialization::kStraightLine);
      }
      const Threat& first = scenario.threats.front();
      const CircumnavSpec spec{"Reach", capturability_radius(first)};
      const CircumnavResult circ = circumnavigate(a0, af, threat_position(first), spec, v);
      return resample_equal_chords(circ.path.points, segments, v);
    }
    case Initialization::kCustom: {
      if (!scenario.options.custom_path || scenario.options.custom_path->size() < 2) {
        throw ArgumentError("initialize: custom initialization needs a path with at least 2 points");
      }
      const auto& path = *scenario.options.custom_path;
      if (distance(path.front(), a0) > 1e-9 * std::max(1.0, a0.norm()) ||
          distance(path.back(), af) > 1e-9 * std::max(1.0, af.norm())) {
        throw ArgumentError("initialize: custom path must start at the start point and end at the goal");
      }
      return resample_equal_chords(path, segments, v);
    }
  }
  throw ArgumentError("initialize: unknown mode");
}

PlanResult plan(const Scenario& scenario) {
  scenario.validate();
  for (const Threat& t : scenario.threats) {
    const double radius = capturability_radius(t);
    const Point2& pos = threat_position(t);
    if (distance(scenario.agent.start, pos) <= radius) {
      throw InfeasibleError("plan: start point lies inside a threat's capturability disk");
    }
    if (distance(scenario.agent.goal, pos) <= radius) {
      throw InfeasibleError("plan: goal point lies inside a threat's capturability disk");
    }
  }

  const PlannerOptions& opts = scenario.options;
  const int segments = opts.n_nodes - 1;
  MinTimeTranscription nlp(scenario.agent.start, scenario.agent.goal, scenario.agent.speed, scenario.threats,
                           segments, opts.constraint_placement);

  const Trajectory warm = initialize(scenario, opts.initialization);
  Eigen::VectorXd x0 = nlp.from_trajectory(warm);
  if (opts.initialization == Initialization::kStraightLine && chord_obstructed(scenario)) {
    for (int k = 0; k < segments; ++k) {
      x0[k] += (2 * k < segments) ? kTentOffset : -kTentOffset;
    }
    x0[segments] /= std::cos(kTentOffset);
  }

  SqpOptions sqp_opts;
  sqp_opts.constraint_tolerance = opts.constraint_tolerance;
  sqp_opts.opt_tolerance = opts.opt_tolerance;
  sqp_opts.max_iterations = opts.max_iterations;
  const SqpResult sol = SqpSolver(sqp_opts).solve(nlp, x0);

  PlanResult res;
  res.trajectory = nlp.to_trajectory(sol.x);
  res.t_f = res.trajectory.final_time();
  res.iterations = sol.iterations;
  res.constraint_violation = sol.violation;
  res.stationarity = sol.stationarity;
  res.converged = sol.status == SqpStatus::kConverged && sol.violation <= opts.constraint_tolerance;
  res.min_clearance = std::numeric_limits<double>::infinity();
  if (!scenario.threats.empty()) {
    Eigen::VectorXd c_eq;
    Eigen::VectorXd c_in;
    nlp.constraints(sol.x, c_eq, c_in);
    res.min_clearance = c_in.head(c_in.size() - 1).minCoeff();
  }
  return res;
}

VerificationReport resample_and_verify(const PlanResult& result, const Scenario& scenario, int factor,
                                       bool run_oracle) {
  if (factor < 2) {
    throw ArgumentError("resample_and_verify: factor must be at least 2");
  }
  VerificationReport rep;
  rep.worst_clearance = std::numeric_limits<double>::infinity();
  const Trajectory& traj = result.trajectory;
  const double tol = scenario.options.constraint_tolerance;
  for (std::size_t k = 0; k < traj.headings.size(); ++k) {
    const Point2 a = traj.points[k];
    const Point2 b = traj.points[k + 1];
    const double heading = traj.headings[k];
    for (int j = 0; j <= factor; ++j) {
      const Point2 p = a + (b - a) * (static_cast<double>(j) / static_cast<double>(factor));
      ++rep.samples;
      for (const Threat& t : scenario.threats) {
        const double c = threat_clearance(p, heading, t);
        if (c < rep.worst_clearance) {
          rep.worst_clearance = c;
          rep.worst_point = p;
        }
        if (!run_oracle || std::abs(c) <= tol) {
          continue;
        }
        const bool captured = threat_oracle_captures(p, heading, t);
        if (captured != (c < 0.0)) {
          ++rep.oracle_disagreements;
          if (captured) {
            ++rep.oracle_unsafe;
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace eznav
