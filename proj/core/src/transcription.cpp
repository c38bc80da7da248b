#include "eznav/transcription.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/minima.hpp>

#include "eznav/engagement_oracle.hpp"
#include "eznav/errors.hpp"

namespace eznav {

namespace {

constexpr int kSegmentScan = 8;

// The pursuer clearance is singular exactly on P0; nudge off it.
Point2 off_singularity(const Point2& p, const Point2& threat_pos) {
  if (distance(p, threat_pos) < 1e-12) {
    return p + Point2{1e-9, 0.0};
  }
  return p;
}

ClearanceJet clearance_jet(const Point2& p, double heading, const Threat& threat) {
  if (const auto* pursuer = std::get_if<PursuerThreat>(&threat)) {
    return signed_clearance_jet(off_singularity(p, pursuer->position), heading, *pursuer);
  }
  return turret_clearance_jet(p, heading, std::get<TurretThreat>(threat));
}

}  // namespace

double segment_min_fraction(const Point2& a, const Point2& b, double heading, const Threat& threat) {
  const auto at = [&](double f) { return threat_clearance(a + (b - a) * f, heading, threat); };
  int best = 0;
  double best_val = at(0.0);
  for (int i = 1; i <= kSegmentScan; ++i) {
    const double v = at(static_cast<double>(i) / kSegmentScan);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = static_cast<double>(std::max(best - 1, 0)) / kSegmentScan;
  const double hi = static_cast<double>(std::min(best + 1, kSegmentScan)) / kSegmentScan;
  const auto [f, val] = boost::math::tools::brent_find_minima(at, lo, hi, 40);
  return val < best_val ? f : static_cast<double>(best) / kSegmentScan;
}

double threat_clearance(const Point2& agent_pos, double agent_heading, const Threat& threat) {
  if (const auto* pursuer = std::get_if<PursuerThreat>(&threat)) {
    return signed_clearance(off_singularity(agent_pos, pursuer->position), Angle::radians(agent_heading),
                            *pursuer);
  }
  return turret_clearance(agent_pos, agent_heading, std::get<TurretThreat>(threat));
}

bool threat_oracle_captures(const Point2& agent_pos, double agent_heading, const Threat& threat) {
  if (const auto* pursuer = std::get_if<PursuerThreat>(&threat)) {
    return pursuit_capture_possible(agent_pos, Angle::radians(agent_heading), *pursuer);
  }
  return turret_neutralization_possible(agent_pos, Angle::radians(agent_heading), std::get<TurretThreat>(threat));
}

MinTimeTranscription::MinTimeTranscription(const Point2& a0, const Point2& af, double speed,
                                           std::vector<Threat> threats, int segments,
                                           ConstraintPlacement placement)
    : a0_(a0),
      af_(af),
      speed_(speed),
      threats_(std::move(threats)),
      segments_(segments),
      placement_(placement) {
  if (segments_ < 2) {
    throw ArgumentError("MinTimeTranscription: need at least 2 segments");
  }
  if (!(speed_ > 0.0) || !std::isfinite(speed_)) {
    throw ArgumentError("MinTimeTranscription: speed must be positive");
  }
  chord_ = distance(a0_, af_);
  if (!(chord_ > 0.0)) {
    throw ArgumentError("MinTimeTranscription: start and goal coincide");
  }
  t_scale_ = chord_ / speed_;
}

int MinTimeTranscription::num_inequalities() const {
  return rows_per_segment() * segments_ * static_cast<int>(threats_.size()) + 1;
}

double MinTimeTranscription::objective(const Eigen::VectorXd& x) const { return x[segments_]; }

Eigen::VectorXd MinTimeTranscription::objective_gradient(const Eigen::VectorXd& /*x*/) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(segments_ + 1);
  g[segments_] = 1.0;
  return g;
}

std::vector<Point2> MinTimeTranscription::nodes(const Eigen::VectorXd& x) const {
  const double step = chord_ * x[segments_] / static_cast<double>(segments_);
  std::vector<Point2> pts(static_cast<std::size_t>(segments_) + 1);
  pts[0] = a0_;
  for (int k = 0; k < segments_; ++k) {
    pts[k + 1] = pts[k] + unit_vector(x[k]) * step;
  }
  return pts;
}

void MinTimeTranscription::constraints(const Eigen::VectorXd& x, Eigen::VectorXd& c_eq,
                                       Eigen::VectorXd& c_in) const {
  const std::vector<Point2> pts = nodes(x);
  c_eq.resize(2);
  c_eq[0] = pts.back().x - af_.x;
  c_eq[1] = pts.back().y - af_.y;
  c_in.resize(num_inequalities());
  int row = 0;
  std::vector<double> fractions;
  for (const Threat& threat : threats_) {
    for (int k = 0; k < segments_; ++k) {
      row_fractions(x, pts, k, threat, fractions);
      for (const double f : fractions) {
        c_in[row++] = threat_clearance(pts[k] + (pts[k + 1] - pts[k]) * f, x[k], threat);
      }
    }
  }
  c_in[row] = x[segments_] - 1.0;
}

void MinTimeTranscription::jacobian(const Eigen::VectorXd& x, Eigen::MatrixXd& j_eq,
                                    Eigen::MatrixXd& j_in) const {
  const int m = segments_;
  const int n = m + 1;
  const std::vector<Point2> pts = nodes(x);
  const double step = chord_ * x[m] / static_cast<double>(m);
  const double dstep_dtau = chord_ / static_cast<double>(m);

  // dp_k/dpsi_i = step * h_perp_i for i < k; dp_k/dtau = (chord / M) sum_{i<k} h_i.
  std::vector<Point2> dpsi(static_cast<std::size_t>(m));
  std::vector<Point2> dtau(static_cast<std::size_t>(m) + 1);
  dtau[0] = {0.0, 0.0};
  for (int i = 0; i < m; ++i) {
    const Point2 h = unit_vector(x[i]);
    dpsi[i] = Point2{-h.y, h.x} * step;
    dtau[i + 1] = dtau[i] + h * dstep_dtau;
  }

  j_eq = Eigen::MatrixXd::Zero(2, n);
  for (int i = 0; i < m; ++i) {
    j_eq(0, i) = dpsi[i].x;
    j_eq(1, i) = dpsi[i].y;
  }
  j_eq(0, m) = dtau[m].x;
  j_eq(1, m) = dtau[m].y;

  j_in = Eigen::MatrixXd::Zero(num_inequalities(), n);
  // Row for the point p_k + f (p_{k+1} - p_k) flown with heading psi_k. For
  // the segment minimum, f is the minimiser and its own variation drops out.
  int row = 0;
  std::vector<double> fractions;
  for (const Threat& threat : threats_) {
    for (int k = 0; k < m; ++k) {
      row_fractions(x, pts, k, threat, fractions);
      for (const double f : fractions) {
        const Point2 p = pts[k] + (pts[k + 1] - pts[k]) * f;
        const ClearanceJet jet = clearance_jet(p, x[k], threat);
        for (int i = 0; i < k; ++i) {
          j_in(row, i) = jet.d_x * dpsi[i].x + jet.d_y * dpsi[i].y;
        }
        const Point2 dp_dpsi_k = dpsi[k] * f;
        const Point2 dp_dtau = dtau[k] + (dtau[k + 1] - dtau[k]) * f;
        j_in(row, k) = jet.d_x * dp_dpsi_k.x + jet.d_y * dp_dpsi_k.y + jet.d_heading;
        j_in(row, m) = jet.d_x * dp_dtau.x + jet.d_y * dp_dtau.y;
        ++row;
      }
    }
  }
  j_in(row, m) = 1.0;
}

void MinTimeTranscription::row_fractions(const Eigen::VectorXd& x, const std::vector<Point2>& pts, int k,
                                         const Threat& threat, std::vector<double>& out) const {
  out.clear();
  if (placement_ == ConstraintPlacement::kNodes) {
    out.push_back(0.0);
    out.push_back(1.0);
    return;
  }
  out.push_back(segment_min_fraction(pts[k], pts[k + 1], x[k], threat));
}

Trajectory MinTimeTranscription::to_trajectory(const Eigen::VectorXd& x) const {
  const std::vector<double> headings(x.data(), x.data() + segments_);
  Trajectory traj = chain_headings(a0_, headings, x[segments_] * t_scale_, speed_);
  for (double& h : traj.headings) {
    h = wrap_radians(h);
  }
  return traj;
}

Eigen::VectorXd MinTimeTranscription::from_trajectory(const Trajectory& traj) const {
  if (traj.headings.size() != static_cast<std::size_t>(segments_)) {
    throw ArgumentError("MinTimeTranscription::from_trajectory: segment count mismatch");
  }
  Eigen::VectorXd x(segments_ + 1);
  // Unwrap so neighbouring headings differ by less than pi.
  double prev = traj.headings[0];
  for (int k = 0; k < segments_; ++k) {
    double h = traj.headings[k];
    if (k > 0) {
      h = prev + wrap_radians(h - prev);
    }
    x[k] = h;
    prev = h;
  }
  x[segments_] = traj.final_time() / t_scale_;
  return x;
}

}  // namespace eznav
