#include "eznav/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eznav/errors.hpp"

namespace eznav {

double Trajectory::length() const {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    total += distance(points[k], points[k + 1]);
  }
  return total;
}

double Trajectory::node_heading(std::size_t k) const {
  if (headings.empty()) {
    throw ArgumentError("Trajectory::node_heading: trajectory has no segments");
  }
  return headings[std::min(k, headings.size() - 1)];
}

void Trajectory::validate(double speed, double rel_tol) const {
  if (times.size() != points.size()) {
    throw ArgumentError("trajectory: times and points differ in size");
  }
  if (!points.empty() && headings.size() + 1 != points.size()) {
    throw ArgumentError("trajectory: expected one heading per segment");
  }
  if (!times.empty() && times.front() != 0.0) {
    throw ArgumentError("trajectory: time stamps must start at zero");
  }
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double dt = times[k + 1] - times[k];
    if (dt < 0.0) {
      throw ArgumentError("trajectory: time stamps decrease at node " + std::to_string(k));
    }
    const double len = distance(points[k], points[k + 1]);
    const double expected = speed * dt;
    if (std::abs(len - expected) > rel_tol * std::max(expected, 1e-300)) {
      throw ArgumentError("trajectory: segment " + std::to_string(k) + " is not flown at constant speed");
    }
  }
}

Trajectory chain_headings(const Point2& start, std::span<const double> headings, double total_time,
                          double speed) {
  Trajectory traj;
  const std::size_t segments = headings.size();
  traj.times.reserve(segments + 1);
  traj.points.reserve(segments + 1);
  traj.headings.assign(headings.begin(), headings.end());
  const double dt = segments == 0 ? 0.0 : total_time / static_cast<double>(segments);
  Point2 p = start;
  traj.times.push_back(0.0);
  traj.points.push_back(p);
  for (std::size_t k = 0; k < segments; ++k) {
    p += unit_vector(headings[k]) * (speed * dt);
    traj.times.push_back(dt * static_cast<double>(k + 1));
    traj.points.push_back(p);
  }
  return traj;
}

namespace {

struct PolylineCursor {
  std::size_t segment = 0;
  double param = 0.0;
  Point2 point;
};

// Advances `cursor` to the first point further along the polyline that is
// exactly `chord` away from the cursor's current point. Returns false when
// the polyline ends first.
bool advance(std::span<const Point2> poly, PolylineCursor& cursor, double chord) {
  const Point2 q = cursor.point;
  for (std::size_t j = cursor.segment; j + 1 < poly.size(); ++j) {
    const Point2 a = poly[j];
    const Point2 b = poly[j + 1];
    if (distance(b, q) < chord) {
      continue;
    }
    // |a + s (b - a) - q|^2 = chord^2, larger root.
    const Point2 ab = b - a;
    const Point2 qa = a - q;
    const double qa2 = ab.dot(ab);
    if (qa2 == 0.0) {
      continue;
    }
    const double lin = 2.0 * ab.dot(qa);
    const double cst = qa.dot(qa) - chord * chord;
    const double disc = std::max(lin * lin - 4.0 * qa2 * cst, 0.0);
    double s = (-lin + std::sqrt(disc)) / (2.0 * qa2);
    const double lo = (j == cursor.segment) ? cursor.param : 0.0;
    s = std::clamp(s, lo, 1.0);
    cursor.segment = j;
    cursor.param = s;
    cursor.point = a + ab * s;
    return true;
  }
  return false;
}

}  // namespace

Trajectory resample_equal_chords(std::span<const Point2> polyline, std::size_t segments, double speed) {
  if (polyline.size() < 2) {
    throw ArgumentError("resample_equal_chords: polyline needs at least two points");
  }
  if (segments < 1) {
    throw ArgumentError("resample_equal_chords: need at least one segment");
  }
  if (!(speed > 0.0)) {
    throw ArgumentError("resample_equal_chords: speed must be positive");
  }
  const Point2 end = polyline.back();
  double arc = 0.0;
  for (std::size_t k = 0; k + 1 < polyline.size(); ++k) {
    arc += distance(polyline[k], polyline[k + 1]);
  }

  std::vector<Point2> nodes;
  // Residual of the last chord: distance from vertex (segments - 1) to the
  // end point, minus the chord length. Decreasing in chord.
  auto residual = [&](double chord, std::vector<Point2>* out) {
    PolylineCursor cursor{0, 0.0, polyline.front()};
    if (out) {
      out->assign(1, cursor.point);
    }
    for (std::size_t k = 0; k + 1 < segments; ++k) {
      if (!advance(polyline, cursor, chord)) {
        return -chord;
      }
      if (out) {
        out->push_back(cursor.point);
      }
    }
    return distance(cursor.point, end) - chord;
  };

  double lo = 0.0;
  double hi = arc / static_cast<double>(segments);
  if (residual(hi, nullptr) > 0.0) {
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * arc; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid, nullptr) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double chord = 0.5 * (lo + hi);
  residual(chord, &nodes);
  nodes.push_back(end);

  std::vector<double> headings;
  headings.reserve(segments);
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    headings.push_back(bearing(nodes[k], nodes[k + 1]));
  }
  // Re-chain so the constant-speed invariant holds exactly; the end point
  // moves by at most the bisection tolerance.
  return chain_headings(polyline.front(), headings, chord * static_cast<double>(segments) / speed, speed);
}

}  // namespace eznav
