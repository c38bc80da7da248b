#pragma once

#include <Eigen/Dense>

namespace eznav {

// Smooth NLP
//   minimize f(x)  subject to  c_E(x) = 0,  c_I(x) >= 0.
class NlpProblem {
 public:
  virtual ~NlpProblem() = default;

  virtual int num_variables() const = 0;
  virtual int num_equalities() const = 0;
  virtual int num_inequalities() const = 0;

  virtual double objective(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd objective_gradient(const Eigen::VectorXd& x) const = 0;
  virtual void constraints(const Eigen::VectorXd& x, Eigen::VectorXd& c_eq, Eigen::VectorXd& c_in) const = 0;
  virtual void jacobian(const Eigen::VectorXd& x, Eigen::MatrixXd& j_eq, Eigen::MatrixXd& j_in) const = 0;
};

struct SqpOptions {
  double constraint_tolerance = 1e-6;
  // Relative first-order optimality tolerance.
  double opt_tolerance = 1e-8;
  int max_iterations = 500;
  double initial_trust_radius = 0.5;
  double max_trust_radius = 10.0;
  double initial_penalty = 10.0;
  double hessian_step = 1e-6;
  // Smallest eigenvalue allowed in the QP Hessian.
  double hessian_floor = 1e-6;
};

enum class SqpStatus { kConverged, kMaxIterations, kStalled };

struct SqpResult {
  SqpStatus status = SqpStatus::kStalled;
  // Best feasible iterate if any was found, otherwise the final iterate.
  Eigen::VectorXd x;
  double objective = 0.0;
  double violation = 0.0;    // max equality/inequality violation at x
  double stationarity = 0.0;
  Eigen::VectorXd y;         // equality multipliers
  Eigen::VectorXd lambda;    // inequality multipliers
  int iterations = 0;
};

// Trust-region S-l-infinity QP method: each step solves an elastic QP with
// an exact (finite-difference, eigenvalue-floored) Lagrangian Hessian, and
// steps are accepted on the l-infinity exact penalty function with a
// second-order correction.
class SqpSolver {
 public:
  explicit SqpSolver(SqpOptions opts = {}) : opts_(opts) {}
  SqpResult solve(const NlpProblem& nlp, const Eigen::VectorXd& x0) const;

 private:
  SqpOptions opts_;
};

// max(|c_E|_inf, max_i(-c_I,i), 0).
double constraint_violation(const Eigen::VectorXd& c_eq, const Eigen::VectorXd& c_in);

}  // namespace eznav
