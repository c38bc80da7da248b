#include "eznav/qp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <vector>

#include "eznav/errors.hpp"

namespace eznav {

namespace {

double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double alpha = 1e300;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) {
      alpha = std::min(alpha, -v[i] / dv[i]);
    }
  }
  return alpha;
}

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Re-solves the KKT system on the active set guessed by the interior point
// iterate, correcting the guess a few times (drop the most negative
// multiplier, or add the most violated constraint). Returns false if no
// primal/dual feasible active set is found.
bool polish(const QpProblem& qp, const Eigen::VectorXd& z, QpSolution& sol, double pscale, double dscale) {
  const Eigen::Index n = qp.c.size();
  const Eigen::Index me = qp.f.size();
  const Eigen::Index mi = sol.lambda.size();
  std::vector<char> is_active(static_cast<std::size_t>(mi), 0);
  for (Eigen::Index i = 0; i < mi; ++i) {
    is_active[i] = sol.lambda[i] > z[i] ? 1 : 0;
  }
  const double ptol = 1e-11 * pscale;
  const double dtol = 1e-11 * dscale;
  for (int round = 0; round < 2 * (n + 1); ++round) {
    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < mi; ++i) {
      if (is_active[i]) {
        active.push_back(i);
      }
    }
    const auto na = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + me + na, n + me + na);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + me + na);
    kkt.topLeftCorner(n, n) = qp.Q;
    rhs.head(n) = -qp.c;
    if (me > 0) {
      kkt.block(0, n, n, me) = -qp.E.transpose();
      kkt.block(n, 0, me, n) = qp.E;
      rhs.segment(n, me) = qp.f;
    }
    for (Eigen::Index a = 0; a < na; ++a) {
      kkt.block(0, n + me + a, n, 1) = -qp.G.row(active[a]).transpose();
      kkt.block(n + me + a, 0, 1, n) = qp.G.row(active[a]);
      rhs[n + me + a] = qp.h[active[a]];
    }
    const Eigen::VectorXd w = kkt.completeOrthogonalDecomposition().solve(rhs);
    if (!w.allFinite()) {
      return false;
    }
    const Eigen::VectorXd resid = kkt * w - rhs;
    if (resid.head(n).lpNorm<Eigen::Infinity>() > dtol ||
        (me + na > 0 && resid.tail(me + na).lpNorm<Eigen::Infinity>() > ptol)) {
      return false;
    }
    const Eigen::VectorXd x = w.head(n);

    Eigen::Index worst_mult = -1;
    double worst_mult_val = -dtol;
    for (Eigen::Index a = 0; a < na; ++a) {
      if (w[n + me + a] < worst_mult_val) {
        worst_mult_val = w[n + me + a];
        worst_mult = active[a];
      }
    }
    if (worst_mult >= 0) {
      is_active[worst_mult] = 0;
      continue;
    }
    Eigen::Index worst_row = -1;
    if (mi > 0) {
      const Eigen::VectorXd slack = qp.G * x - qp.h;
      double worst_slack = -ptol;
      for (Eigen::Index i = 0; i < mi; ++i) {
        if (!is_active[i] && slack[i] < worst_slack) {
          worst_slack = slack[i];
          worst_row = i;
        }
      }
    }
    if (worst_row >= 0) {
      is_active[worst_row] = 1;
      continue;
    }
    sol.x = x;
    sol.y = w.segment(n, me);
    sol.lambda.setZero();
    for (Eigen::Index a = 0; a < na; ++a) {
      sol.lambda[active[a]] = std::max(w[n + me + a], 0.0);
    }
    return true;
  }
  return false;
}

}  // namespace

QpSolution solve_qp(const QpProblem& qp, const QpOptions& opts) {
  const Eigen::Index n = qp.c.size();
  const Eigen::Index me = qp.f.size();
  const Eigen::Index mi = qp.h.size();
  if (qp.Q.rows() != n || qp.Q.cols() != n || qp.E.rows() != me || (me > 0 && qp.E.cols() != n) ||
      qp.G.rows() != mi || (mi > 0 && qp.G.cols() != n)) {
    throw ArgumentError("solve_qp: inconsistent dimensions");
  }

  QpSolution sol;
  sol.x = Eigen::VectorXd::Zero(n);
  sol.y = Eigen::VectorXd::Zero(me);
  sol.lambda = Eigen::VectorXd::Ones(mi);
  Eigen::VectorXd z = Eigen::VectorXd::Ones(mi);

  // Primal residuals are measured against the constraint data, dual ones
  // against the objective; a large linear term must not loosen feasibility.
  const double pscale = 1.0 + std::max(inf_norm(qp.f), inf_norm(qp.h));
  const double dscale = 1.0 + inf_norm(qp.c);
  const Eigen::MatrixXd Et = qp.E.transpose();
  const Eigen::MatrixXd Gt = qp.G.transpose();
  Eigen::MatrixXd kkt(n + me, n + me);

  auto factor = [&](const Eigen::VectorXd& lam, const Eigen::VectorXd& zz) {
    const Eigen::VectorXd d = lam.cwiseQuotient(zz);
    kkt.setZero();
    kkt.topLeftCorner(n, n) = qp.Q + Gt * d.asDiagonal() * qp.G;
    // Tiny primal regularisation keeps the factorisation well posed when Q
    // is singular on inactive directions.
    kkt.topLeftCorner(n, n).diagonal().array() += 1e-12 * dscale;
    if (me > 0) {
      kkt.topRightCorner(n, me) = -Et;
      kkt.bottomLeftCorner(me, n) = qp.E;
    }
    return Eigen::PartialPivLU<Eigen::MatrixXd>(kkt);
  };

  // Starting point: one affine-scaling step from x = 0, z = lambda = 1, then
  // push the slacks and multipliers away from zero.
  if (mi > 0) {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu0 = factor(sol.lambda, z);
    const Eigen::VectorXd r_d = qp.c - Gt * sol.lambda;
    const Eigen::VectorXd r_i = -z - qp.h;
    Eigen::VectorXd rhs(n + me);
    rhs.head(n) = -r_d - Gt * (z.cwiseProduct(sol.lambda) + sol.lambda.cwiseProduct(r_i)).cwiseQuotient(z);
    rhs.tail(me) = qp.f;
    const Eigen::VectorXd w = lu0.solve(rhs);
    if (w.allFinite()) {
      const Eigen::VectorXd dz = qp.G * w.head(n) + r_i;
      const Eigen::VectorXd dl = -(z.cwiseProduct(sol.lambda) + sol.lambda.cwiseProduct(dz)).cwiseQuotient(z);
      sol.x = w.head(n);
      sol.y = w.tail(me);
      z = (z + dz).cwiseAbs().cwiseMax(1.0);
      sol.lambda = (sol.lambda + dl).cwiseAbs().cwiseMax(1.0);
    }
  }

  // Best iterate by scaled KKT residual; the normal equations lose accuracy
  // near degenerate vertices and the residual can start to grow.
  QpSolution best = sol;
  Eigen::VectorXd best_z = z;
  double best_res = std::numeric_limits<double>::infinity();
  bool converged = false;

  for (int it = 0; it < opts.max_iterations; ++it) {
    sol.iterations = it;
    const Eigen::VectorXd& x = sol.x;
    Eigen::VectorXd& lam = sol.lambda;
    const Eigen::VectorXd r_d = qp.Q * x + qp.c - Et * sol.y - Gt * lam;
    const Eigen::VectorXd r_e = qp.E * x - qp.f;
    const Eigen::VectorXd r_i = qp.G * x - z - qp.h;
    const double mu = mi > 0 ? z.dot(lam) / static_cast<double>(mi) : 0.0;
    const double res =
        std::max({inf_norm(r_d) / dscale, inf_norm(r_e) / pscale, inf_norm(r_i) / pscale, mu / dscale});
    if (!std::isfinite(res) || res > 1e3 * best_res) {
      break;
    }
    if (res < best_res) {
      best_res = res;
      best = sol;
      best_z = z;
    }
    if (res <= opts.tolerance) {
      converged = true;
      break;
    }

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu = factor(lam, z);

    auto solve_dir = [&](const Eigen::VectorXd& r_c, Eigen::VectorXd& dx, Eigen::VectorXd& dy,
                         Eigen::VectorXd& dz, Eigen::VectorXd& dl) {
      Eigen::VectorXd rhs(n + me);
      rhs.head(n) = -r_d - Gt * (r_c + lam.cwiseProduct(r_i)).cwiseQuotient(z);
      rhs.tail(me) = -r_e;
      const Eigen::VectorXd sol_dir = lu.solve(rhs);
      dx = sol_dir.head(n);
      dy = sol_dir.tail(me);
      dz = qp.G * dx + r_i;
      dl = -(r_c + lam.cwiseProduct(dz)).cwiseQuotient(z);
    };

    Eigen::VectorXd dx, dy, dz, dl;
    solve_dir(z.cwiseProduct(lam), dx, dy, dz, dl);
    const double a_aff = std::min({1.0, max_step(z, dz), max_step(lam, dl)});
    const double mu_aff =
        mi > 0 ? (z + a_aff * dz).dot(lam + a_aff * dl) / static_cast<double>(mi) : 0.0;
    const double sigma = mu > 0.0 ? std::pow(mu_aff / mu, 3) : 0.0;
    const Eigen::VectorXd r_c =
        z.cwiseProduct(lam) + dz.cwiseProduct(dl) - Eigen::VectorXd::Constant(mi, sigma * mu);
    solve_dir(r_c, dx, dy, dz, dl);

    if (!dx.allFinite() || !dy.allFinite() || !dz.allFinite() || !dl.allFinite()) {
      break;
    }
    const double alpha = std::min(1.0, 0.995 * std::min(max_step(z, dz), max_step(lam, dl)));
    sol.x += alpha * dx;
    sol.y += alpha * dy;
    z += alpha * dz;
    lam += alpha * dl;
    z = z.cwiseMax(1e-300);
    lam = lam.cwiseMax(1e-300);
  }
  const int iterations = sol.iterations;
  if (!std::isfinite(best_res)) {
    sol.status = QpStatus::kNumericalFailure;
    return sol;
  }
  sol = best;
  sol.iterations = iterations;
  const bool polished = polish(qp, best_z, sol, pscale, dscale);
  sol.status = (polished || converged) ? QpStatus::kOptimal : QpStatus::kMaxIterations;
  return sol;
}

}  // namespace eznav
