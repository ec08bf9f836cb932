#pragma once

#include <cmath>

namespace roadwheel {

/// Angles are plain radians. Nothing in the library wraps them: a rotation
/// by theta + 2*pi is a different rolling state than theta.
using Angle = double;

inline constexpr double kPi = 3.14159265358979323846;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr bool contains(double t) const { return lo <= t && t <= hi; }
  constexpr bool contains(Interval other) const { return lo <= other.lo && other.hi <= hi; }
  constexpr double width() const { return hi - lo; }
};

/// Clockwise rotation by phi about the origin.
inline Point2 rotate_cw(Angle phi, Point2 p) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return {p.x * c + p.y * s, -p.x * s + p.y * c};
}

/// Clockwise spin about the origin followed by a horizontal shift: the only
/// motions a smoothly rolling wheel undergoes.
struct RigidPose {
  Angle spin = 0.0;
  double shift = 0.0;
};

inline Point2 pose_apply(const RigidPose& pose, Point2 p) {
  Point2 q = rotate_cw(pose.spin, p);
  q.x += pose.shift;
  return q;
}

/// Velocity of the carried point p when the wheel is at rotation phi and the
/// horizontal shift changes at tau_rate per unit rotation. Uses
/// d/dphi rotate_cw(phi, .) = rotate_cw(phi + pi/2, .).
inline Point2 carried_velocity(Point2 p, Angle phi, double tau_rate) {
  Point2 v = rotate_cw(phi + kPi / 2.0, p);
  v.x += tau_rate;
  return v;
}

}  // namespace roadwheel
