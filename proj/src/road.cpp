#include "roadwheel/road.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "roadwheel/errors.hpp"

namespace roadwheel {
namespace {

std::string fmt_range(Interval r) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << r.lo << ", " << r.hi << "]";
  return os.str();
}

/// [lo, hi] cut at every wheel breakpoint strictly inside it.
std::vector<Interval> split_at_breakpoints(const WheelSpec& wheel, double lo, double hi) {
  std::vector<Interval> pieces;
  double start = lo;
  for (double bp : wheel.breakpoints_within({lo, hi})) {
    pieces.push_back({start, bp});
    start = bp;
  }
  pieces.push_back({start, hi});
  return pieces;
}

void check_range(Interval range) {
  if (!(range.lo <= 0.0 && 0.0 <= range.hi) || !(range.lo < range.hi)) {
    throw Error(ErrorKind::BadParameter, "solve range must be nondegenerate and contain 0, got " + fmt_range(range));
  }
}

/// Integrates from 0 to each end of range, stopping on every stop point.
std::vector<DenseSegment> integrate_both_ways(const OdeRhs& rhs, Interval range, const std::vector<double>& stops,
                                              const StepperOptions& opts) {
  std::vector<DenseSegment> all;
  auto run = [&](double dir_end, bool forward_dir) {
    std::vector<double> marks;
    for (double s : stops) {
      if (forward_dir ? (s > 0.0 && s < dir_end) : (s < 0.0 && s > dir_end)) marks.push_back(s);
    }
    if (forward_dir) {
      std::sort(marks.begin(), marks.end());
    } else {
      std::sort(marks.begin(), marks.end(), std::greater<>());
    }
    marks.push_back(dir_end);
    double t = 0.0;
    double x = 0.0;
    for (double m : marks) {
      auto segs = integrate_dp45(rhs, t, x, m, opts);
      if (!segs.empty()) {
        const auto& last = segs.back();
        x = last.c[0] + last.c[1];
      }
      t = m;
      all.insert(all.end(), segs.begin(), segs.end());
    }
  };
  if (range.hi > 0.0) run(range.hi, true);
  if (range.lo < 0.0) run(range.lo, false);
  return all;
}

StepperOptions stepper_options(const SolverConfig& cfg, bool fixed) {
  StepperOptions opts;
  opts.abs_tol = cfg.abs_tol;
  opts.rel_tol = cfg.rel_tol;
  opts.max_step = cfg.max_step;
  opts.fixed_step = fixed;
  return opts;
}

}  // namespace

void SolverConfig::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_unit(abs_tol) || !in_unit(rel_tol)) throw Error(ErrorKind::BadParameter, "solver tolerances must lie in (0, 1)");
  if (!(max_step > 0.0) || !std::isfinite(max_step)) throw Error(ErrorKind::BadParameter, "max_step must be > 0");
  if (audit_grid < 2) throw Error(ErrorKind::BadParameter, "audit_grid must be at least 2");
}

RoadCurve::RoadCurve(std::shared_ptr<const WheelSpec> wheel, DenseTrajectory x_of_theta, RoadSource source,
                     const SolverConfig& cfg)
    : wheel_(std::move(wheel)), x_of_theta_(std::move(x_of_theta)), source_(source), cfg_(cfg) {
  interp_ = wheel_->smoothness() == Smoothness::continuous_only ? Interp::linear : Interp::dense;
  const auto& ts = thetas();
  const auto& xv = xs();
  if (ts.size() < 2) throw Error(ErrorKind::BadParameter, "road needs at least two samples");
  bool anchored = false;
  ys_.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ys_.push_back(-wheel_->radius(ts[i]));
    if (ts[i] == 0.0 && xv[i] == 0.0) anchored = true;
    if (i > 0 && !(xv[i] > xv[i - 1])) {
      throw Error(ErrorKind::ToleranceNotMet, "road x is not strictly increasing near theta = " + std::to_string(ts[i]));
    }
  }
  if (!anchored) throw Error(ErrorKind::BadParameter, "road is missing the anchor sample theta = 0, x = 0");
}

void RoadCurve::check_span(Angle theta) const {
  if (!theta_span().contains(theta)) {
    throw Error(ErrorKind::OutOfRange,
                "theta = " + std::to_string(theta) + " outside road span " + fmt_range(theta_span()));
  }
}

double RoadCurve::x_at(Angle theta) const {
  check_span(theta);
  return x_of_theta_.value(theta);
}

double RoadCurve::y_at(Angle theta) const {
  check_span(theta);
  return -wheel_->radius(theta);
}

double RoadCurve::x_increment(Angle theta, double delta) const {
  check_span(theta);
  return gauss_kronrod_15([this](double t) { return wheel_->radius(t); }, theta, theta + delta).value;
}

RoadCurve solve_forward(std::shared_ptr<const WheelSpec> wheel, Interval range, const SolverConfig& cfg) {
  cfg.validate();
  check_range(range);
  if (!wheel->domain().contains(range)) {
    throw Error(ErrorKind::OutOfDomain,
                "range " + fmt_range(range) + " exceeds wheel domain " + fmt_range(wheel->domain()));
  }
  const WheelSpec& w = *wheel;
  const OdeRhs rhs = [&w](double t, double) { return w.radius(t); };
  const bool fixed = w.smoothness() == Smoothness::continuous_only;
  auto segs = integrate_both_ways(rhs, range, w.breakpoints(), stepper_options(cfg, fixed));
  return RoadCurve(std::move(wheel), DenseTrajectory(std::move(segs)), RoadSource::forward, cfg);
}

RoadCurve solve_forward(const WheelSpec& wheel, Interval range, const SolverConfig& cfg) {
  return solve_forward(std::make_shared<const WheelSpec>(wheel), range, cfg);
}

InverseSolution solve_inverse(const RoadFunction& f, Interval range, const SolverConfig& cfg) {
  cfg.validate();
  check_range(range);
  if (!f.height) throw Error(ErrorKind::BadParameter, "road function has no height evaluator");
  const Interval xi = f.x_interval;
  if (!(xi.lo <= 0.0 && 0.0 <= xi.hi) || !(xi.lo < xi.hi)) {
    throw Error(ErrorKind::BadParameter, "road x_interval must contain 0, got " + fmt_range(xi));
  }
  // Midpoints of a grid over the interval, cut to a finite window when a side
  // is unbounded; the right-hand side re-checks the sign wherever it is called.
  constexpr double kAuditWindow = 64.0;
  const Interval audit{std::max(xi.lo, -kAuditWindow), std::min(xi.hi, kAuditWindow)};
  for (std::size_t i = 0; i < cfg.audit_grid; ++i) {
    const double x = audit.lo + audit.width() * (static_cast<double>(i) + 0.5) / static_cast<double>(cfg.audit_grid);
    const double y = f.height(x);
    if (!(y < 0.0)) {
      std::ostringstream os;
      os << f.label << " has height " << y << " >= 0 at x = " << x;
      throw Error(ErrorKind::RoadAboveAxis, os.str());
    }
  }

  const OdeRhs rhs = [&f, xi](double t, double x) {
    if (!xi.contains(x)) {
      std::ostringstream os;
      os.precision(17);
      os << "trajectory left " << f.label << " x-interval " << fmt_range(xi) << " at theta = " << t << " (x = " << x
         << ")";
      throw Error(ErrorKind::RangeExceeded, os.str());
    }
    const double y = f.height(x);
    if (!(y < 0.0)) {
      std::ostringstream os;
      os << f.label << " has height " << y << " >= 0 at x = " << x;
      throw Error(ErrorKind::RoadAboveAxis, os.str());
    }
    return -y;
  };
  auto traj = std::make_shared<const DenseTrajectory>(integrate_both_ways(rhs, range, {}, stepper_options(cfg, false)));

  RealFn height = f.height;
  auto wheel = std::make_shared<const WheelSpec>(WheelSpec::Shape{
      "inverse:" + f.label, [traj, height](double t) { return -height(traj->value(t)); }, nullptr, range,
      Smoothness::piecewise_c1, {}, std::nullopt});
  RoadCurve road(wheel, *traj, RoadSource::inverse, cfg);

  const Interval xs = road.x_span();
  for (std::size_t i = 0; i < cfg.audit_grid; ++i) {
    const double x = xs.lo + xs.width() * static_cast<double>(i) / static_cast<double>(cfg.audit_grid - 1);
    const double err = std::abs(road_height(road, x) - f.height(x));
    if (err > 10.0 * cfg.abs_tol) {
      std::ostringstream os;
      os << "recovered wheel misses " << f.label << " by " << err << " at x = " << x;
      throw Error(ErrorKind::ToleranceNotMet, os.str());
    }
  }
  return {std::move(wheel), std::move(road)};
}

Angle theta_of_x(const RoadCurve& road, double x) {
  const auto& ts = road.thetas();
  const auto& xv = road.xs();
  if (!(xv.front() <= x && x <= xv.back())) {
    std::ostringstream os;
    os.precision(17);
    os << "x = " << x << " outside road x-range " << fmt_range(road.x_span());
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  auto it = std::upper_bound(xv.begin(), xv.end(), x);
  std::size_t i = static_cast<std::size_t>(std::distance(xv.begin(), it));
  i = std::min(i == 0 ? 0 : i - 1, xv.size() - 2);
  if (x == xv[i]) return ts[i];
  if (x == xv[i + 1]) return ts[i + 1];

  double lo = ts[i];
  double hi = ts[i + 1];
  if (road.interp() == Interp::linear) {
    return lo + (x - xv[i]) / (xv[i + 1] - xv[i]) * (hi - lo);
  }

  const double width_goal = 1e-9 * (hi - lo);
  while (hi - lo > width_goal) {
    const double mid = 0.5 * (lo + hi);
    if (road.x_at(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double theta = 0.5 * (lo + hi);
  for (int k = 0; k < 3; ++k) {
    const double residual = road.x_at(theta) - x;
    if (residual == 0.0) break;
    // theta'(x) = 1/r and r = -y along the road.
    const double next = theta - residual / -road.y_at(theta);
    if (!(ts[i] <= next && next <= ts[i + 1])) break;
    theta = next;
  }
  const double final_residual = std::abs(road.x_at(theta) - x);
  if (final_residual > road.config().abs_tol) {
    std::ostringstream os;
    os << "theta_of_x residual " << final_residual << " at x = " << x;
    throw Error(ErrorKind::ToleranceNotMet, os.str());
  }
  return theta;
}

double road_height(const RoadCurve& road, double x) { return road.y_at(theta_of_x(road, x)); }

double arc_length_wheel(const WheelSpec& wheel, Angle a, Angle b, const SolverConfig& cfg) {
  if (wheel.smoothness() == Smoothness::continuous_only) {
    throw Error(ErrorKind::NotRectifiableHere, "wheel '" + wheel.label() + "' has no derivative to measure length with");
  }
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (!wheel.domain().contains(Interval{lo, hi})) {
    throw Error(ErrorKind::OutOfDomain, "arc " + fmt_range({lo, hi}) + " leaves wheel domain");
  }
  auto speed = [&wheel](double t) {
    const auto rate = wheel.radius_rate(t);
    if (!rate) throw Error(ErrorKind::NotRectifiableHere, "no derivative at theta = " + std::to_string(t));
    return std::hypot(wheel.radius(t), *rate);
  };
  double total = 0.0;
  for (Interval piece : split_at_breakpoints(wheel, lo, hi)) {
    total += integrate_adaptive(speed, piece.lo, piece.hi, cfg.abs_tol, cfg.rel_tol).value;
  }
  return total;
}

double arc_length_road(const RoadCurve& road, Angle a, Angle b) {
  const WheelSpec& wheel = road.wheel();
  if (wheel.smoothness() == Smoothness::continuous_only) {
    throw Error(ErrorKind::NotRectifiableHere, "road of '" + wheel.label() + "' is not rectifiable");
  }
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (!road.theta_span().contains(Interval{lo, hi})) {
    throw Error(ErrorKind::OutOfRange, "arc " + fmt_range({lo, hi}) + " leaves road span");
  }
  const std::function<double(double)> y = [&road](double t) { return road.y_at(t); };
  double total = 0.0;
  for (Interval piece : split_at_breakpoints(wheel, lo, hi)) {
    auto speed = [&](double t) {
      const double dx = -road.y_at(t);  // x' = r = -y
      const double dy = derivative_within(y, t, piece, 6e-6 * std::max(1.0, std::abs(t)));
      return std::hypot(dx, dy);
    };
    total += integrate_adaptive(speed, piece.lo, piece.hi, road.config().abs_tol, road.config().rel_tol).value;
  }
  return total;
}

}  // namespace roadwheel
