#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eznav/geometry.hpp"

namespace eznav {

// Time-stamped constant-speed polyline. headings[k] is the heading flown on
// the segment points[k] -> points[k + 1].
struct Trajectory {
  std::vector<double> times;
  std::vector<Point2> points;
  std::vector<double> headings;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  double final_time() const { return times.empty() ? 0.0 : times.back(); }

  // Sum of segment lengths.
  double length() const;

  // Heading used at node k when evaluating heading-dependent constraints:
  // the outgoing segment heading, or the last segment's heading at the end.
  double node_heading(std::size_t k) const;

  // Checks sizes, monotone times starting at zero, and per-segment length
  // equal to speed * dt within `rel_tol`. Throws ArgumentError.
  void validate(double speed, double rel_tol = 1e-9) const;
};

// Builds a trajectory by chaining `headings` from `start` on a uniform time
// grid of step total_time / headings.size().
Trajectory chain_headings(const Point2& start, std::span<const double> headings, double total_time,
                          double speed);

// Resamples a polyline into `segments` equal-length chords whose vertices lie
// on the polyline and whose last vertex is the polyline's end point, then
// returns the corresponding constant-speed trajectory.
Trajectory resample_equal_chords(std::span<const Point2> polyline, std::size_t segments, double speed);

}  // namespace eznav
