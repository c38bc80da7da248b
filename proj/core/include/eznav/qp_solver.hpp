#pragma once

#include <Eigen/Dense>

namespace eznav {

// Dense convex QP
//   minimize    0.5 x'Qx + c'x
//   subject to  E x  = f
//               G x >= h
// Q must be positive semidefinite on the null space of E.
struct QpProblem {
  Eigen::MatrixXd Q;
  Eigen::VectorXd c;
  Eigen::MatrixXd E;
  Eigen::VectorXd f;
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
};

struct QpOptions {
  double tolerance = 1e-9;
  int max_iterations = 60;
};

enum class QpStatus { kOptimal, kMaxIterations, kNumericalFailure };

struct QpSolution {
  QpStatus status = QpStatus::kNumericalFailure;
  Eigen::VectorXd x;
  Eigen::VectorXd y;       // equality multipliers
  Eigen::VectorXd lambda;  // inequality multipliers, >= 0
  int iterations = 0;
};

// Mehrotra predictor-corrector primal-dual interior point method, finished
// by an exact solve on the identified active set.
QpSolution solve_qp(const QpProblem& qp, const QpOptions& opts = {});

}  // namespace eznav
