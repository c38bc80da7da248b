#pragma once

#include <cmath>
#include <numbers>

namespace eznav {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2& operator+=(const Point2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Point2& operator-=(const Point2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Point2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  double norm() const { return std::hypot(x, y); }
  constexpr double dot(const Point2& o) const { return x * o.x + y * o.y; }
  constexpr double cross(const Point2& o) const { return x * o.y - y * o.x; }

  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

constexpr Point2 operator+(Point2 a, const Point2& b) { return a += b; }
constexpr Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
constexpr Point2 operator*(Point2 a, double s) { return a *= s; }
constexpr Point2 operator*(double s, Point2 a) { return a *= s; }
constexpr Point2 operator-(const Point2& a) { return {-a.x, -a.y}; }

inline Point2 unit_vector(double radians) {
  return {std::cos(radians), std::sin(radians)};
}

// Rotates `p` counter-clockwise by `radians` about the origin.
inline Point2 rotate(const Point2& p, double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Planar angle in radians. Construction does not wrap; call wrapped() (or
// wrap_angle) to get the canonical (-pi, pi] representative.
class Angle {
 public:
  constexpr Angle() = default;
  static constexpr Angle radians(double value) { return Angle(value); }

  constexpr double rad() const { return value_; }
  Angle wrapped() const;

  constexpr Angle operator-() const { return Angle(-value_); }
  friend constexpr Angle operator+(Angle a, Angle b) { return Angle(a.value_ + b.value_); }
  friend constexpr Angle operator-(Angle a, Angle b) { return Angle(a.value_ - b.value_); }
  friend constexpr bool operator==(Angle, Angle) = default;

 private:
  explicit constexpr Angle(double value) : value_(value) {}
  double value_ = 0.0;
};

// Canonical representative in (-pi, pi]. Throws DomainError on non-finite
// input.
Angle wrap_angle(double radians);
double wrap_radians(double radians);

// Smallest unsigned rotation between two directions, in [0, pi].
double angular_separation(double a, double b);

double distance(const Point2& a, const Point2& b);

// Bearing (world frame) of `to` as seen from `from`.
double bearing(const Point2& from, const Point2& to);

// Aspect angle: agent heading minus the bearing from the agent to the
// threat, wrapped. Zero means heading straight at the threat; positive
// values mean the threat lies clockwise of the heading.
Angle aspect_angle(const Point2& agent_pos, Angle agent_heading, const Point2& threat_pos);

bool is_finite(const Point2& p);

}  // namespace eznav
