#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "eznav/geometry.hpp"
#include "eznav/sqp_solver.hpp"
#include "eznav/threat.hpp"
#include "eznav/trajectory.hpp"

namespace eznav {

// Minimum-time problem on a uniform time grid with piecewise-constant
// headings. Variables are (psi_0, ..., psi_{M-1}, tau) with t_f = tau * T0,
// T0 = |af - a0| / speed. Nodes are chained forward from a0.
//
// Equalities: p_M - af = 0.
// Inequalities, for every threat and every segment k (heading psi_k):
//   kNodes:    clearance at both end points p_k and p_{k+1};
//   kSegments: minimum clearance over the whole segment;
// then tau - 1 >= 0 (chord bound).
enum class ConstraintPlacement { kNodes, kSegments };

class MinTimeTranscription final : public NlpProblem {
 public:
  MinTimeTranscription(const Point2& a0, const Point2& af, double speed, std::vector<Threat> threats,
                       int segments, ConstraintPlacement placement = ConstraintPlacement::kSegments);

  int num_variables() const override { return segments_ + 1; }
  int num_equalities() const override { return 2; }
  int num_inequalities() const override;

  double objective(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd objective_gradient(const Eigen::VectorXd& x) const override;
  void constraints(const Eigen::VectorXd& x, Eigen::VectorXd& c_eq, Eigen::VectorXd& c_in) const override;
  void jacobian(const Eigen::VectorXd& x, Eigen::MatrixXd& j_eq, Eigen::MatrixXd& j_in) const override;

  int segments() const { return segments_; }
  double time_scale() const { return t_scale_; }

  Trajectory to_trajectory(const Eigen::VectorXd& x) const;
  // Variables reproducing `traj`, which must have `segments` segments.
  Eigen::VectorXd from_trajectory(const Trajectory& traj) const;

 private:
  std::vector<Point2> nodes(const Eigen::VectorXd& x) const;
  // Fractions along segment k at which its constraint rows are evaluated.
  void row_fractions(const Eigen::VectorXd& x, const std::vector<Point2>& pts, int k, const Threat& threat,
                     std::vector<double>& out) const;
  int rows_per_segment() const { return placement_ == ConstraintPlacement::kNodes ? 2 : 1; }

  Point2 a0_;
  Point2 af_;
  double speed_;
  std::vector<Threat> threats_;
  int segments_;
  ConstraintPlacement placement_;
  double chord_;
  double t_scale_;
};

}  // namespace eznav
