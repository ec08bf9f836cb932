#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "roadwheel/geom.hpp"
#include "roadwheel/road.hpp"
#include "roadwheel/wheel.hpp"

namespace roadwheel {

/// A wheel together with the road solved from it over a rolling range.
class RollScene {
 public:
  RollScene(std::shared_ptr<const WheelSpec> wheel, Interval range, const SolverConfig& cfg = {});
  RollScene(const WheelSpec& wheel, Interval range, const SolverConfig& cfg = {});
  /// Adopts an already solved road; the range is the road's theta span.
  explicit RollScene(RoadCurve road);

  const WheelSpec& wheel() const { return road_.wheel(); }
  const RoadCurve& road() const { return road_; }
  Interval range() const { return range_; }

 private:
  RoadCurve road_;
  Interval range_;
};

struct TracePath {
  Angle mark = 0.0;
  std::vector<Angle> phis;
  std::vector<Point2> points;
};

struct CrashEvent {
  Angle phi = 0.0;
  Angle theta_pen = 0.0;
  double depth = 0.0;
};

/// (x(theta), -r(theta)). Throws OutOfRange.
Point2 contact_point(const RollScene& scene, Angle theta);

/// Spin phi, shift x(phi).
RigidPose rolled_pose(const RollScene& scene, Angle phi);

/// Positions of the wheel point W(mark) over the rolling angles phis.
TracePath trace_point(const RollScene& scene, Angle mark, std::span<const Angle> phis);

/// The whole wheel, sampled at thetas, placed in its pose after rolling phi.
std::vector<Point2> rolled_wheel_samples(const RollScene& scene, Angle phi, std::span<const Angle> thetas);

/// Positions of the wheel center at every road sample: (x(theta), 0).
std::vector<Point2> center_path(const RollScene& scene);

inline constexpr double kDefaultCrashTol = 1e-9;

/// Rolled wheel samples lying more than crash_tol below the road. Samples
/// whose x falls outside the solved road are skipped. Sorted by phi, then by
/// depth descending.
std::vector<CrashEvent> detect_crashes(const RollScene& scene, std::span<const Angle> phis,
                                       std::span<const Angle> thetas, double crash_tol = kDefaultCrashTol);

/// Fraction of phis with at least one crash event.
double crash_fraction(std::span<const CrashEvent> events, std::span<const Angle> phis);

/// n points from a to b inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

/// 720 rolling angles per full turn across the scene range.
std::vector<Angle> default_phi_grid(const RollScene& scene);
/// 2000 samples across the wheel body.
std::vector<Angle> default_theta_grid(const WheelSpec& wheel);

}  // namespace roadwheel
