#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "roadwheel/geom.hpp"
#include "roadwheel/integrator.hpp"
#include "roadwheel/wheel.hpp"

namespace roadwheel {

struct SolverConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  Angle max_step = 0.01;
  std::size_t audit_grid = 1000;

  /// Throws BadParameter unless tolerances lie in (0, 1) and max_step > 0.
  void validate() const;
};

enum class RoadSource { forward, inverse };

/// How x(theta) is evaluated between samples: the integrator's dense output
/// for wheels with a derivative, straight lines for continuous_only wheels.
enum class Interp { linear, dense };

/// The road traced by contact points (x(theta), y(theta)) = (int_0^theta r, -r).
/// Samples are the integrator nodes; x is strictly increasing and the
/// anchor theta = 0, x = 0 is always a sample.
class RoadCurve {
 public:
  RoadCurve(std::shared_ptr<const WheelSpec> wheel, DenseTrajectory x_of_theta, RoadSource source,
            const SolverConfig& cfg);

  const std::vector<double>& thetas() const { return x_of_theta_.node_times(); }
  const std::vector<double>& xs() const { return x_of_theta_.node_values(); }
  const std::vector<double>& ys() const { return ys_; }
  std::size_t size() const { return ys_.size(); }

  RoadSource source() const { return source_; }
  Interp interp() const { return interp_; }
  const SolverConfig& config() const { return cfg_; }
  const WheelSpec& wheel() const { return *wheel_; }
  const std::shared_ptr<const WheelSpec>& wheel_ptr() const { return wheel_; }

  Interval theta_span() const { return x_of_theta_.span(); }
  Interval x_span() const { return {xs().front(), xs().back()}; }

  /// Interpolated x(theta). Throws OutOfRange outside theta_span().
  double x_at(Angle theta) const;
  /// y(theta) = -r(theta), evaluated from the wheel.
  double y_at(Angle theta) const;
  Point2 point_at(Angle theta) const { return {x_at(theta), y_at(theta)}; }

  /// x(theta + delta) - x(theta) by one Gauss-Kronrod panel of x' = r over
  /// the short interval, instead of subtracting two interpolated values.
  /// Only theta must lie on the road; theta + delta need only be in the wheel domain.
  double x_increment(Angle theta, double delta) const;

 private:
  void check_span(Angle theta) const;

  std::shared_ptr<const WheelSpec> wheel_;
  DenseTrajectory x_of_theta_;
  std::vector<double> ys_;
  RoadSource source_;
  Interp interp_;
  SolverConfig cfg_;
};

/// A road given as a graph y = height(x) < 0 over x_interval.
struct RoadFunction {
  RealFn height;
  Interval x_interval;
  std::string label = "road";
};

/// Wheel -> road. x(theta) integrates x' = r(theta) from the anchor in both
/// directions, stepping exactly onto every breakpoint inside range.
RoadCurve solve_forward(std::shared_ptr<const WheelSpec> wheel, Interval range, const SolverConfig& cfg = {});
RoadCurve solve_forward(const WheelSpec& wheel, Interval range, const SolverConfig& cfg = {});

struct InverseSolution {
  std::shared_ptr<const WheelSpec> wheel;
  RoadCurve road;
};

/// Road -> wheel: integrates x'(theta) = -f(x(theta)), x(0) = 0 and returns the
/// wheel r(theta) = -f(x(theta)) with the road it induces.
InverseSolution solve_inverse(const RoadFunction& road, Interval range, const SolverConfig& cfg = {});

/// The unique theta with x(theta) = x: bisection on the bracketing sample
/// interval, then at most three guarded Newton steps with theta'(x) = 1/r.
Angle theta_of_x(const RoadCurve& road, double x);

/// g(x) = -r(theta(x)).
double road_height(const RoadCurve& road, double x);

/// Length of the wheel curve between polar angles a and b, integrating
/// sqrt(r^2 + r'^2) piece by piece. Throws NotRectifiableHere for
/// continuous_only wheels.
double arc_length_wheel(const WheelSpec& wheel, Angle a, Angle b, const SolverConfig& cfg = {});

/// Length of the road between the contact points for a and b, integrating
/// sqrt(x'^2 + y'^2) with y' taken from the road's own height samples.
double arc_length_road(const RoadCurve& road, Angle a, Angle b);

}  // namespace roadwheel
