#include "eznav/sqp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eznav/errors.hpp"
#include "eznav/qp_solver.hpp"

namespace eznav {

double constraint_violation(const Eigen::VectorXd& c_eq, const Eigen::VectorXd& c_in) {
  double v = 0.0;
  if (c_eq.size() > 0) {
    v = std::max(v, c_eq.cwiseAbs().maxCoeff());
  }
  if (c_in.size() > 0) {
    v = std::max(v, (-c_in).maxCoeff());
  }
  return v;
}

namespace {

struct Point {
  Eigen::VectorXd x;
  double f = 0.0;
  Eigen::VectorXd g;
  Eigen::VectorXd c_eq;
  Eigen::VectorXd c_in;
  Eigen::MatrixXd j_eq;
  Eigen::MatrixXd j_in;
  double viol = 0.0;
};

Point evaluate(const NlpProblem& nlp, const Eigen::VectorXd& x, bool with_derivatives) {
  Point p;
  p.x = x;
  p.f = nlp.objective(x);
  nlp.constraints(x, p.c_eq, p.c_in);
  p.viol = constraint_violation(p.c_eq, p.c_in);
  if (with_derivatives) {
    p.g = nlp.objective_gradient(x);
    nlp.jacobian(x, p.j_eq, p.j_in);
  }
  return p;
}

Eigen::VectorXd lagrangian_gradient(const NlpProblem& nlp, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& lambda) {
  Eigen::MatrixXd j_eq;
  Eigen::MatrixXd j_in;
  nlp.jacobian(x, j_eq, j_in);
  Eigen::VectorXd grad = nlp.objective_gradient(x);
  if (y.size() > 0) {
    grad -= j_eq.transpose() * y;
  }
  if (lambda.size() > 0) {
    grad -= j_in.transpose() * lambda;
  }
  return grad;
}

Eigen::MatrixXd floored_hessian(const NlpProblem& nlp, const Point& p, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& lambda, const SqpOptions& opts) {
  const Eigen::Index n = p.x.size();
  Eigen::MatrixXd hess(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double h = opts.hessian_step * std::max(1.0, std::abs(p.x[j]));
    Eigen::VectorXd xp = p.x;
    Eigen::VectorXd xm = p.x;
    xp[j] += h;
    xm[j] -= h;
    hess.col(j) = (lagrangian_gradient(nlp, xp, y, lambda) - lagrangian_gradient(nlp, xm, y, lambda)) / (2.0 * h);
  }
  hess = 0.5 * (hess + hess.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess);
  if (eig.info() != Eigen::Success) {
    return Eigen::MatrixXd::Identity(n, n) * std::max(opts.hessian_floor, 1.0);
  }
  const Eigen::VectorXd vals = eig.eigenvalues().cwiseMax(opts.hessian_floor);
  return eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().transpose();
}

struct StepResult {
  bool ok = false;
  Eigen::VectorXd d;
  double s = 0.0;
  Eigen::VectorXd y;
  Eigen::VectorXd lambda;
  double model = 0.0;  // g'd + 0.5 d'Hd + nu s
};

// Elastic trust-region QP in (d, s) with constraint constants c_eq, c_in.
StepResult elastic_qp(const Eigen::MatrixXd& hess, const Eigen::VectorXd& g, const Eigen::MatrixXd& j_eq,
                      const Eigen::MatrixXd& j_in, const Eigen::VectorXd& c_eq, const Eigen::VectorXd& c_in,
                      double nu, double radius) {
  const Eigen::Index n = g.size();
  const Eigen::Index me = c_eq.size();
  const Eigen::Index mi = c_in.size();
  const Eigen::Index nv = n + 1;
  const Eigen::Index rows = 2 * me + mi + 1 + 2 * n;

  QpProblem qp;
  qp.Q = Eigen::MatrixXd::Zero(nv, nv);
  qp.Q.topLeftCorner(n, n) = hess;
  qp.Q(n, n) = 1e-10;
  qp.c = Eigen::VectorXd::Zero(nv);
  qp.c.head(n) = g;
  qp.c[n] = nu;
  qp.E = Eigen::MatrixXd::Zero(0, nv);
  qp.f = Eigen::VectorXd::Zero(0);
  qp.G = Eigen::MatrixXd::Zero(rows, nv);
  qp.h = Eigen::VectorXd::Zero(rows);

  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < me; ++i, r += 2) {
    // s - (J d + c) >= 0 and s + (J d + c) >= 0
    qp.G.row(r).head(n) = -j_eq.row(i);
    qp.G(r, n) = 1.0;
    qp.h[r] = c_eq[i];
    qp.G.row(r + 1).head(n) = j_eq.row(i);
    qp.G(r + 1, n) = 1.0;
    qp.h[r + 1] = -c_eq[i];
  }
  for (Eigen::Index i = 0; i < mi; ++i, ++r) {
    qp.G.row(r).head(n) = j_in.row(i);
    qp.G(r, n) = 1.0;
    qp.h[r] = -c_in[i];
  }
  qp.G(r, n) = 1.0;
  qp.h[r] = 0.0;
  ++r;
  for (Eigen::Index j = 0; j < n; ++j, r += 2) {
    qp.G(r, j) = 1.0;
    qp.h[r] = -radius;
    qp.G(r + 1, j) = -1.0;
    qp.h[r + 1] = -radius;
  }

  const QpSolution sol = solve_qp(qp);
  StepResult step;
  if (sol.status == QpStatus::kNumericalFailure || !sol.x.allFinite()) {
    return step;
  }
  step.ok = true;
  step.d = sol.x.head(n);
  step.s = std::max(sol.x[n], 0.0);
  step.y = Eigen::VectorXd(me);
  for (Eigen::Index i = 0; i < me; ++i) {
    step.y[i] = sol.lambda[2 * i + 1] - sol.lambda[2 * i];
  }
  step.lambda = sol.lambda.segment(2 * me, mi);
  step.model = g.dot(step.d) + 0.5 * step.d.dot(hess * step.d) + nu * step.s;
  return step;
}

double penalty_value(const Point& p, double nu) { return p.f + nu * p.viol; }

}  // namespace

SqpResult SqpSolver::solve(const NlpProblem& nlp, const Eigen::VectorXd& x0) const {
  const int n = nlp.num_variables();
  if (x0.size() != n) {
    throw ArgumentError("SqpSolver::solve: initial point has the wrong size");
  }
  Point cur = evaluate(nlp, x0, true);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(nlp.num_equalities());
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(nlp.num_inequalities());
  double nu = opts_.initial_penalty;
  double radius = opts_.initial_trust_radius;

  SqpResult res;
  res.status = SqpStatus::kMaxIterations;
  bool have_feasible = false;
  Eigen::VectorXd best_x = cur.x;
  double best_f = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_y = y;
  Eigen::VectorXd best_lambda = lambda;
  double best_stat = std::numeric_limits<double>::infinity();

  constexpr int kMaxPenaltyResets = 5;
  int penalty_resets = 0;
  Eigen::MatrixXd hess;
  bool hess_stale = true;
  int it = 0;
  for (; it < opts_.max_iterations; ++it) {
    if (hess_stale) {
      hess = floored_hessian(nlp, cur, y, lambda, opts_);
      hess_stale = false;
    }
    StepResult step = elastic_qp(hess, cur.g, cur.j_eq, cur.j_in, cur.c_eq, cur.c_in, nu, radius);
    if (!step.ok) {
      res.status = SqpStatus::kStalled;
      break;
    }
    // Raise the penalty while the linearised constraints can be satisfied
    // but the QP prefers to violate them.
    for (int k = 0; k < 8 && step.s > 0.1 * opts_.constraint_tolerance && step.s < 0.99 * cur.viol && nu < 1e10;
         ++k) {
      StepResult trial =
          elastic_qp(hess, cur.g, cur.j_eq, cur.j_in, cur.c_eq, cur.c_in, 10.0 * nu, radius);
      if (!trial.ok) {
        break;
      }
      nu *= 10.0;
      const bool improved = trial.s < 0.5 * step.s;
      step = trial;
      if (!improved) {
        break;
      }
    }
    const double mult_sum = step.y.lpNorm<1>() + step.lambda.lpNorm<1>();
    // A penalty inflated by large early multipliers amplifies second-order
    // constraint drift and stalls the trust region; reset it at feasible
    // iterates, a bounded number of times.
    const double needed = std::max(opts_.initial_penalty, 2.0 * mult_sum);
    if (cur.viol <= opts_.constraint_tolerance && nu > 100.0 * needed && penalty_resets < kMaxPenaltyResets) {
      ++penalty_resets;
      nu = needed;
      step = elastic_qp(hess, cur.g, cur.j_eq, cur.j_in, cur.c_eq, cur.c_in, nu, radius);
      if (!step.ok) {
        res.status = SqpStatus::kStalled;
        break;
      }
    }
    if (nu < 1.1 * mult_sum) {
      nu = 2.0 * mult_sum;
      step = elastic_qp(hess, cur.g, cur.j_eq, cur.j_in, cur.c_eq, cur.c_in, nu, radius);
      if (!step.ok) {
        res.status = SqpStatus::kStalled;
        break;
      }
    }

    // First-order optimality at the current point with the QP multipliers.
    Eigen::VectorXd kkt = cur.g;
    if (step.y.size() > 0) {
      kkt -= cur.j_eq.transpose() * step.y;
    }
    if (step.lambda.size() > 0) {
      kkt -= cur.j_in.transpose() * step.lambda;
    }
    const double gscale = std::max(1.0, cur.g.lpNorm<Eigen::Infinity>());
    double compl_err = 0.0;
    for (Eigen::Index i = 0; i < step.lambda.size(); ++i) {
      compl_err = std::max(compl_err, std::abs(step.lambda[i] * cur.c_in[i]));
    }
    const double stationarity = std::max(kkt.lpNorm<Eigen::Infinity>(), compl_err) / gscale;

    if (cur.viol <= opts_.constraint_tolerance && (!have_feasible || cur.f < best_f ||
                                                    (cur.f == best_f && stationarity < best_stat))) {
      have_feasible = true;
      best_x = cur.x;
      best_f = cur.f;
      best_y = step.y;
      best_lambda = step.lambda;
      best_stat = stationarity;
    }
    if (cur.viol <= opts_.constraint_tolerance && stationarity <= opts_.opt_tolerance) {
      res.status = SqpStatus::kConverged;
      best_x = cur.x;
      best_f = cur.f;
      best_y = step.y;
      best_lambda = step.lambda;
      best_stat = stationarity;
      break;
    }

    const double pred = nu * cur.viol - step.model;
    const double phi = penalty_value(cur, nu);
    if (pred <= 1e-15 * std::max(1.0, std::abs(phi))) {
      // No model decrease is available: either at a stationary point of the
      // penalty function or the trust region has collapsed.
      if (cur.viol <= opts_.constraint_tolerance && stationarity <= opts_.opt_tolerance) {
        res.status = SqpStatus::kConverged;
        best_x = cur.x;
        best_f = cur.f;
        best_y = step.y;
        best_lambda = step.lambda;
        best_stat = stationarity;
      } else {
        res.status = SqpStatus::kStalled;
      }
      break;
    }

    Point trial = evaluate(nlp, cur.x + step.d, false);
    double ratio = (phi - penalty_value(trial, nu)) / pred;
    Eigen::VectorXd d = step.d;
    if (!(ratio >= 0.1)) {
      // Second-order correction: re-linearise the constraint constants at
      // the trial point.
      const Eigen::VectorXd c_eq_soc = trial.c_eq - cur.j_eq * step.d;
      const Eigen::VectorXd c_in_soc = trial.c_in - cur.j_in * step.d;
      const StepResult soc = elastic_qp(hess, cur.g, cur.j_eq, cur.j_in, c_eq_soc, c_in_soc, nu, radius);
      if (soc.ok) {
        Point trial_soc = evaluate(nlp, cur.x + soc.d, false);
        const double ratio_soc = (phi - penalty_value(trial_soc, nu)) / pred;
        if (ratio_soc >= 0.1) {
          trial = std::move(trial_soc);
          ratio = ratio_soc;
          d = soc.d;
        }
      }
    }
    const double dnorm = d.lpNorm<Eigen::Infinity>();
    if (ratio >= 0.1) {
      cur = evaluate(nlp, trial.x, true);
      y = step.y;
      lambda = step.lambda;
      hess_stale = true;
      if (ratio > 0.75 && dnorm >= 0.9 * radius) {
        radius = std::min(2.0 * radius, opts_.max_trust_radius);
      }
    } else {
      radius = 0.25 * std::min(radius, dnorm);
      if (radius < 1e-14) {
        res.status = SqpStatus::kStalled;
        break;
      }
    }
  }
  res.iterations = it;
  if (have_feasible) {
    res.x = best_x;
    res.y = best_y;
    res.lambda = best_lambda;
    res.stationarity = best_stat;
  } else {
    res.x = cur.x;
    res.y = y;
    res.lambda = lambda;
    res.stationarity = std::numeric_limits<double>::infinity();
  }
  const Point fin = evaluate(nlp, res.x, false);
  res.objective = fin.f;
  res.violation = fin.viol;
  if (res.status == SqpStatus::kConverged && fin.viol > opts_.constraint_tolerance) {
    res.status = SqpStatus::kStalled;
  }
  return res;
}

}  // namespace eznav
