#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "roadwheel/geom.hpp"

namespace roadwheel {

/// Right-hand side of a scalar ODE x' = f(t, x).
using OdeRhs = std::function<double(double t, double x)>;

struct StepperOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 0.01;
  /// Take equal steps of at most max_step and skip error control. Used when
  /// the right-hand side has no smoothness for an error estimate to rely on.
  bool fixed_step = false;
  std::size_t max_steps = 5'000'000;
};

/// Continuous extension of one accepted step from t0 to t0 + h (h may be
/// negative). With s = (t - t0) / h the value is
///   c0 + s (c1 + (1 - s) (c2 + s (c3 + (1 - s) c4))),
/// the Dormand-Prince dense output. Linear segments keep c2..c4 at zero.
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  std::array<double, 5> c{};

  double t_lo() const { return h >= 0.0 ? t0 : t0 + h; }
  double t_hi() const { return h >= 0.0 ? t0 + h : t0; }
  double value(double t) const;
};

/// Piecewise continuous solution over a contiguous span, segments ascending.
class DenseTrajectory {
 public:
  DenseTrajectory() = default;
  /// Segments in any order; they must tile a contiguous interval.
  explicit DenseTrajectory(std::vector<DenseSegment> segments);

  Interval span() const { return {nodes_t_.front(), nodes_t_.back()}; }
  double value(double t) const;

  const std::vector<double>& node_times() const { return nodes_t_; }
  const std::vector<double>& node_values() const { return nodes_x_; }
  std::size_t segment_count() const { return segments_.size(); }

 private:
  std::vector<DenseSegment> segments_;
  std::vector<double> nodes_t_;
  std::vector<double> nodes_x_;
};

/// Integrates x' = rhs(t, x), x(t0) = x0, up to t1 (either direction) with the
/// Dormand-Prince 5(4) pair. The last step lands exactly on t1. Segments are
/// returned in traversal order. Throws ToleranceNotMet when the step size
/// underflows or max_steps is exhausted.
std::vector<DenseSegment> integrate_dp45(const OdeRhs& rhs, double t0, double x0, double t1,
                                         const StepperOptions& opts);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Derivative of fn at t with step h, reading fn only inside piece: central
/// when both sides have room, second-order one-sided toward the roomier
/// side otherwise.
double derivative_within(const std::function<double(double)>& fn, double t, Interval piece, double h);

/// Single 15-point Gauss-Kronrod panel on [a, b]; error = |K15 - G7|.
QuadratureResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive Gauss-Kronrod quadrature: bisect the panel with the
/// largest error until the summed error is within abs_tol + rel_tol*|I|.
/// Throws ToleranceNotMet after max_panels panels.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    double rel_tol, std::size_t max_panels = 4000);

}  // namespace roadwheel
