#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "eznav/circumnav.hpp"
#include "eznav/errors.hpp"
#include "eznav/planner.hpp"
#include "eznav/scenario_io.hpp"
#include "eznav/transcription.hpp"
#include "test_support.hpp"

namespace eznav {
namespace {

Scenario golden_scenario() { return load_scenario(EZNAV_SOURCE_DIR "/scenarios/golden_pursuer.json").scenario; }

const PlanResult& golden_plan() {
  static const PlanResult result = plan(golden_scenario());
  return result;
}

double circumnav_time(const Scenario& s, const std::string& label) {
  const auto& threat = std::get<PursuerThreat>(s.threats.front());
  for (const auto& spec : standard_specs(threat)) {
    if (spec.label == label) {
      return circumnavigate(s.agent.start, s.agent.goal, threat.position, spec, s.agent.speed).t_f;
    }
  }
  return 0.0;
}

// Minimum clearance over every segment, using the segment heading.
std::vector<double> segment_clearances(const Trajectory& traj, const Threat& threat) {
  std::vector<double> out;
  for (std::size_t k = 0; k < traj.headings.size(); ++k) {
    const Point2 a = traj.points[k];
    const Point2 b = traj.points[k + 1];
    const double f = segment_min_fraction(a, b, traj.headings[k], threat);
    out.push_back(threat_clearance(a + (b - a) * f, traj.headings[k], threat));
  }
  return out;
}

TEST(Plan, NoThreatsIsTheStraightChord) {
  Scenario s;
  s.agent = {{0.0, 0.0}, {0.0, 4.0}, 0.9};
  s.options.n_nodes = 20;
  const PlanResult res = plan(s);
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.t_f, 4.0 / 0.9, 1e-6);
  for (const Point2& p : res.trajectory.points) {
    EXPECT_NEAR(p.x, 0.0, 1e-6);
  }
}

TEST(Plan, DistantThreatLeavesTheChordAlone) {
  Scenario s;
  s.agent = {{-3.0, 0.0}, {3.0, 0.0}, 0.9};
  s.threats.push_back(PursuerThreat{{0.0, 10.0}, 0.9, 1.0, 0.2});
  s.options.n_nodes = 30;
  const PlanResult res = plan(s);
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.t_f, 6.0 / 0.9, 1e-6);
  EXPECT_GT(res.min_clearance, 0.0);
}

TEST(Plan, GoldenScenarioBetweenApolAndReach) {
  const Scenario s = golden_scenario();
  const PlanResult& res = golden_plan();
  ASSERT_TRUE(res.converged);
  EXPECT_GT(res.t_f, circumnav_time(s, "Apol"));
  EXPECT_LT(res.t_f, circumnav_time(s, "Reach"));
  EXPECT_GE(res.t_f, distance(s.agent.start, s.agent.goal) / s.agent.speed);
  EXPECT_GE(res.min_clearance, -s.options.constraint_tolerance);
  EXPECT_NO_THROW(res.trajectory.validate(s.agent.speed, 1e-9));
  EXPECT_EQ(res.trajectory.size(), 100u);
  EXPECT_NEAR(distance(res.trajectory.points.back(), s.agent.goal), 0.0, 1e-6);
}

TEST(Plan, GoldenScenarioRidesTheBoundaryInOneRun) {
  const Scenario s = golden_scenario();
  const auto c = segment_clearances(golden_plan().trajectory, s.threats.front());
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] <= 1e-6) {
      active.push_back(k);
    }
  }
  ASSERT_GE(active.size(), 3u);
  EXPECT_EQ(active.back() - active.front() + 1, active.size());
}

TEST(Plan, GoldenScenarioDenseResampling) {
  const Scenario s = golden_scenario();
  const VerificationReport rep = resample_and_verify(golden_plan(), s, 10);
  EXPECT_EQ(rep.samples, 99u * 11u);
  EXPECT_GE(rep.worst_clearance, -10.0 * s.options.constraint_tolerance);
  EXPECT_EQ(rep.oracle_unsafe, 0u);
}

TEST(Plan, WarmStartsAgree) {
  Scenario s = golden_scenario();
  s.options.initialization = Initialization::kCircumnavReach;
  const PlanResult res = plan(s);
  ASSERT_TRUE(res.converged);
  EXPECT_NEAR(res.t_f, golden_plan().t_f, 5e-3 * golden_plan().t_f);
}

TEST(Plan, NodePlacementViolationShrinksWithMoreNodes) {
  Scenario s = golden_scenario();
  s.options.constraint_placement = ConstraintPlacement::kNodes;
  s.options.n_nodes = 10;
  const PlanResult coarse = plan(s);
  s.options.n_nodes = 100;
  const PlanResult fine = plan(s);
  ASSERT_TRUE(coarse.converged);
  ASSERT_TRUE(fine.converged);
  const double coarse_worst = resample_and_verify(coarse, s, 10, false).worst_clearance;
  const double fine_worst = resample_and_verify(fine, s, 10, false).worst_clearance;
  EXPECT_LT(coarse_worst, fine_worst);
  EXPECT_LT(fine_worst, 0.0);
}

TEST(Plan, InfeasibleEndPoints) {
  Scenario s = golden_scenario();
  s.agent.goal = {1.0, 0.0};
  EXPECT_THROW(plan(s), InfeasibleError);
  s = golden_scenario();
  s.agent.start = {0.0, 1.1};
  EXPECT_THROW(plan(s), InfeasibleError);
}

TEST(Plan, SlowPursuer) {
  Scenario s;
  s.agent = {{-4.0, 0.3}, {4.0, 0.0}, 1.5};
  s.threats.push_back(PursuerThreat{{0.0, 0.0}, 1.5, 1.0, 0.25});
  s.options.n_nodes = 40;
  const PlanResult res = plan(s);
  ASSERT_TRUE(res.converged);
  const VerificationReport rep = resample_and_verify(res, s, 10);
  EXPECT_GE(rep.worst_clearance, -1e-5);
  EXPECT_EQ(rep.oracle_unsafe, 0u);
}

TEST(Plan, Turret) {
  Scenario s;
  s.agent = {{-3.0, 0.0}, {3.0, 0.0}, 1.0};
  s.threats.push_back(TurretThreat{{0.0, 0.3}, kPi / 2.0, 1.0, 1.0});
  s.options.n_nodes = 40;
  const PlanResult res = plan(s);
  ASSERT_TRUE(res.converged);
  const VerificationReport rep = resample_and_verify(res, s, 10);
  EXPECT_GE(rep.worst_clearance, -1e-5);
  EXPECT_EQ(rep.oracle_unsafe, 0u);
  EXPECT_GT(res.t_f, 6.0);
}

TEST(Plan, TwoPursuers) {
  Scenario s;
  s.agent = {{-5.0, 0.0}, {5.0, 0.0}, 0.8};
  s.threats.push_back(PursuerThreat{{-1.5, 0.2}, 0.8, 0.6, 0.1});
  s.threats.push_back(PursuerThreat{{1.5, -0.2}, 0.8, 0.6, 0.1});
  s.options.n_nodes = 60;
  const PlanResult res = plan(s);
  ASSERT_TRUE(res.converged);
  const VerificationReport rep = resample_and_verify(res, s, 10);
  EXPECT_GE(rep.worst_clearance, -1e-5);
  EXPECT_EQ(rep.oracle_unsafe, 0u);
}

TEST(Initialize, StraightLine) {
  Scenario s;
  s.agent = {{0.0, 0.0}, {4.0, 0.0}, 1.0};
  const Trajectory t = initialize(s, Initialization::kStraightLine);
  ASSERT_EQ(t.size(), 100u);
  for (std::size_t k = 0; k < t.size(); ++k) {
    EXPECT_NEAR(t.points[k].y, 0.0, 1e-15);
    EXPECT_NEAR(t.points[k].x, 4.0 * static_cast<double>(k) / 99.0, 1e-12);
  }
}

TEST(Initialize, CircumnavReachIsFeasible) {
  const Scenario s = golden_scenario();
  const Trajectory t = initialize(s, Initialization::kCircumnavReach);
  ASSERT_EQ(t.size(), 100u);
  for (std::size_t k = 0; k < t.size(); ++k) {
    EXPECT_GE(threat_clearance(t.points[k], t.node_heading(k), s.threats.front()), 0.0) << k;
  }
}

TEST(Initialize, CustomPath) {
  Scenario s = golden_scenario();
  EXPECT_THROW(initialize(s, Initialization::kCustom), ArgumentError);
  s.options.custom_path = std::vector<Point2>{{-3.0, 0.0}, {0.0, 2.5}, {3.0, 0.0}};
  const Trajectory t = initialize(s, Initialization::kCustom);
  EXPECT_EQ(t.size(), 100u);
  EXPECT_NEAR(distance(t.points.back(), s.agent.goal), 0.0, 1e-9);
  s.options.custom_path = std::vector<Point2>{{-2.0, 0.0}, {3.0, 0.0}};
  EXPECT_THROW(initialize(s, Initialization::kCustom), ArgumentError);
}

TEST(Options, Validation) {
  Scenario s = golden_scenario();
  s.options.n_nodes = 2;
  EXPECT_THROW(s.validate(), ArgumentError);
  s = golden_scenario();
  s.agent.speed = 0.0;
  EXPECT_THROW(s.validate(), ArgumentError);
  s = golden_scenario();
  s.agent.goal = s.agent.start;
  EXPECT_THROW(s.validate(), ArgumentError);
}

TEST(Options, NamesRoundTrip) {
  for (auto m : {Initialization::kStraightLine, Initialization::kCircumnavReach, Initialization::kCustom}) {
    EXPECT_EQ(initialization_from_string(to_string(m)), m);
  }
  for (auto p : {ConstraintPlacement::kNodes, ConstraintPlacement::kSegments}) {
    EXPECT_EQ(placement_from_string(to_string(p)), p);
  }
  EXPECT_THROW(initialization_from_string("zigzag"), ArgumentError);
  EXPECT_THROW(placement_from_string("everywhere"), ArgumentError);
}

// Analytic constraint Jacobian against central differences.
void check_jacobian(const MinTimeTranscription& nlp, const Eigen::VectorXd& x) {
  Eigen::MatrixXd j_eq;
  Eigen::MatrixXd j_in;
  nlp.jacobian(x, j_eq, j_in);
  const double h = 1e-6;
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp[i] += h;
    xm[i] -= h;
    Eigen::VectorXd ep, ip, em, im;
    nlp.constraints(xp, ep, ip);
    nlp.constraints(xm, em, im);
    const Eigen::VectorXd fd_eq = (ep - em) / (2 * h);
    const Eigen::VectorXd fd_in = (ip - im) / (2 * h);
    for (int r = 0; r < fd_eq.size(); ++r) {
      ASSERT_NEAR(j_eq(r, i), fd_eq[r], 1e-5 * std::max(1.0, std::abs(fd_eq[r]))) << r << "," << i;
    }
    for (int r = 0; r < fd_in.size(); ++r) {
      ASSERT_NEAR(j_in(r, i), fd_in[r], 1e-5 * std::max(1.0, std::abs(fd_in[r]))) << r << "," << i;
    }
  }
}

TEST(Transcription, JacobianMatchesFiniteDifferences) {
  const Scenario s = golden_scenario();
  testing::Gen gen(61);
  for (auto placement : {ConstraintPlacement::kSegments, ConstraintPlacement::kNodes}) {
    const MinTimeTranscription nlp(s.agent.start, s.agent.goal, s.agent.speed, s.threats, 20, placement);
    const Eigen::VectorXd base = nlp.from_trajectory(initialize(
        [&] {
          Scenario c = s;
          c.options.n_nodes = 21;
          return c;
        }(),
        Initialization::kCircumnavReach));
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd x = base;
      for (int i = 0; i < x.size() - 1; ++i) {
        x[i] += gen.uniform(-0.1, 0.1);
      }
      x[x.size() - 1] *= gen.uniform(1.0, 1.2);
      check_jacobian(nlp, x);
    }
  }
}

TEST(Transcription, TrajectoryRoundTrip) {
  const Scenario s = golden_scenario();
  const MinTimeTranscription nlp(s.agent.start, s.agent.goal, s.agent.speed, s.threats, 99);
  const Trajectory t = initialize(s, Initialization::kCircumnavReach);
  const Trajectory back = nlp.to_trajectory(nlp.from_trajectory(t));
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    EXPECT_NEAR(distance(back.points[k], t.points[k]), 0.0, 1e-9);
  }
  EXPECT_NEAR(back.final_time(), t.final_time(), 1e-9);
}

}  // namespace
}  // namespace eznav
