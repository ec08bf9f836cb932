#include "roadwheel/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "roadwheel/errors.hpp"
#include "roadwheel/integrator.hpp"

namespace roadwheel {

RollingLaw::RollingLaw(RealFn rho, RealFn tau, RealFn tau_rate, double fd_step)
    : rho_(std::move(rho)), tau_(std::move(tau)), tau_rate_(std::move(tau_rate)), fd_step_(fd_step) {
  if (!rho_ || !tau_) throw Error(ErrorKind::BadParameter, "rolling law needs rho and tau");
  if (!(fd_step_ > 0.0)) throw Error(ErrorKind::BadParameter, "rolling law fd_step must be > 0");
  if (rho_(0.0) != 0.0) throw Error(ErrorKind::BadParameter, "rolling law must have rho(0) = 0");
  if (tau_(0.0) != 0.0) throw Error(ErrorKind::BadParameter, "rolling law must have tau(0) = 0");
}

RollingLaw& RollingLaw::with_increment(Increment inc) {
  increment_ = std::move(inc);
  return *this;
}

double RollingLaw::tau_rate(Angle phi) const {
  if (tau_rate_) return tau_rate_(phi);
  const double h = fd_step_;
  if (increment_) return (increment_(phi, h) - increment_(phi, -h)) / (2.0 * h);
  return (tau_(phi + h) - tau_(phi - h)) / (2.0 * h);
}

RollingLaw canonical_law(const RollScene& scene, double fd_step) {
  auto road = std::make_shared<const RoadCurve>(scene.road());
  RealFn rho = [](double t) { return t; };
  RealFn tau = [road](double phi) { return road->x_at(phi); };
  if (road->wheel().smoothness() != Smoothness::continuous_only) {
    return RollingLaw(rho, tau, [road](double phi) { return -road->y_at(phi); }, fd_step);
  }
  RollingLaw law(rho, tau, nullptr, fd_step);
  law.with_increment([road](double phi, double delta) { return road->x_increment(phi, delta); });
  return law;
}

RollingLaw doubled_spin_law() {
  return RollingLaw([](double t) { return 2.0 * t; }, [](double phi) { return 2.0 * std::tan(phi / 2.0); },
                    [](double phi) {
                      const double c = std::cos(phi / 2.0);
                      return 1.0 / (c * c);
                    });
}

Point2 noslip_velocity(const WheelSpec& wheel, const RollingLaw& law, Angle theta) {
  const Point2 p = wheel.point(theta);
  const Angle phi = law.rho(theta);
  return carried_velocity(p, phi, law.tau_rate(phi));
}

double noslip_residual(const WheelSpec& wheel, const RollingLaw& law, Angle theta) {
  return norm(noslip_velocity(wheel, law, theta));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "n/a";
  }
  return "?";
}

NoSlipReport noslip_report(const WheelSpec& wheel, const RollingLaw& law, std::span<const Angle> thetas, double tol) {
  NoSlipReport report;
  report.tolerance = tol;
  report.thetas.assign(thetas.begin(), thetas.end());
  report.residuals.reserve(thetas.size());
  for (Angle t : thetas) {
    const double r = noslip_residual(wheel, law, t);
    report.residuals.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
  }
  report.no_slip = report.max_residual <= tol;
  return report;
}

double default_noslip_tolerance(const WheelSpec& wheel) {
  return wheel.smoothness() == Smoothness::continuous_only ? 1e-4 : 1e-6;
}

bool CorollaryReport::passed() const {
  return center_above == Verdict::pass && arc_length != Verdict::fail && slope != Verdict::fail;
}

std::optional<double> road_slope_at(const RollScene& scene, Angle theta) {
  const WheelSpec& wheel = scene.wheel();
  if (wheel.smoothness() == Smoothness::continuous_only || wheel.is_breakpoint(theta)) return std::nullopt;
  const RoadCurve& road = scene.road();
  Interval piece = wheel.piece_containing(theta);
  piece.lo = std::max(piece.lo, road.theta_span().lo);
  piece.hi = std::min(piece.hi, road.theta_span().hi);
  const Interval x_piece{road.x_at(piece.lo), road.x_at(piece.hi)};
  const double x0 = road.x_at(theta);
  const std::function<double(double)> g = [&road](double x) { return road_height(road, x); };
  return derivative_within(g, x0, x_piece, 1e-5 * std::max(1.0, std::abs(x0)));
}

namespace {

/// Cumulative wheel and road arc lengths from 0 to every grid angle, built
/// from consecutive increments so each stretch is integrated once.
double max_arc_length_gap(const RollScene& scene, std::span<const Angle> grid) {
  std::vector<Angle> pos;
  std::vector<Angle> neg;
  for (Angle t : grid) (t >= 0.0 ? pos : neg).push_back(t);
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end(), std::greater<>());
  double worst = 0.0;
  for (const auto* side : {&pos, &neg}) {
    double prev = 0.0;
    double wheel_len = 0.0;
    double road_len = 0.0;
    for (Angle t : *side) {
      wheel_len += arc_length_wheel(scene.wheel(), prev, t, scene.road().config());
      road_len += arc_length_road(scene.road(), prev, t);
      worst = std::max(worst, std::abs(wheel_len - road_len));
      prev = t;
    }
  }
  return worst;
}

}  // namespace

CorollaryReport verify_corollaries(const RollScene& scene, std::span<const Angle> grid, const CorollaryTolerances& tol) {
  const WheelSpec& wheel = scene.wheel();
  CorollaryReport report;

  for (Angle t : grid) {
    const Point2 center = pose_apply(rolled_pose(scene, t), {0.0, 0.0});
    const Point2 contact = contact_point(scene, t);
    report.center_above_max_err =
        std::max({report.center_above_max_err, std::abs(center.x - contact.x), std::abs(center.y)});
  }
  report.center_above = report.center_above_max_err <= tol.center ? Verdict::pass : Verdict::fail;

  if (wheel.smoothness() == Smoothness::continuous_only) return report;

  report.arc_length_max_err = max_arc_length_gap(scene, grid);
  report.arc_length = *report.arc_length_max_err <= tol.arc_length ? Verdict::pass : Verdict::fail;

  double slope_err = 0.0;
  double rolled_err = 0.0;
  for (Angle t : grid) {
    const auto rate = wheel.radius_rate(t);
    const auto road_slope = road_slope_at(scene, t);
    if (!rate || !road_slope) {
      ++report.slope_points_skipped;
      continue;
    }
    const double wheel_slope = -*rate / wheel.radius(t);
    slope_err = std::max(slope_err, std::abs(*road_slope - wheel_slope));

    // Tangent of the wheel curve at W(t), carried into the rolled pose.
    const Interval piece = wheel.piece_containing(t);
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    const Point2 tangent{
        derivative_within([&wheel](double s) { return wheel.point(s).x; }, t, piece, h),
        derivative_within([&wheel](double s) { return wheel.point(s).y; }, t, piece, h)};
    const Point2 rolled = rotate_cw(t, tangent);
    rolled_err = std::max(rolled_err, std::abs(rolled.y / rolled.x - *road_slope));
  }
  report.slope_max_err = slope_err;
  report.rolled_slope_max_err = rolled_err;
  report.slope = std::max(slope_err, rolled_err) <= tol.slope ? Verdict::pass : Verdict::fail;
  return report;
}

DoubledSpinReport run_section4_counterexample(double tol, std::size_t grid_points) {
  const WheelSpec wheel = make_wheel(preset::LineSecant{});
  const RollingLaw law = doubled_spin_law();
  const Point2 start = wheel.point(0.0);
  DoubledSpinReport report;

  double wheel_len = 0.0;
  double prev = 0.0;
  for (Angle t : linspace(0.0, kPi / 3.0, std::max<std::size_t>(grid_points, 2))) {
    wheel_len += arc_length_wheel(wheel, prev, t);
    prev = t;
    // Contact point under the law; the road it induces is the line y = -1.
    const Angle phi = law.rho(t);
    const Point2 contact = pose_apply({phi, law.tau(phi)}, wheel.point(t));
    const double road_len = distance(contact, start);
    report.max_arc_length_err =
        std::max({report.max_arc_length_err, std::abs(road_len - wheel_len), std::abs(contact.y - start.y)});
    report.max_residual = std::max(report.max_residual, noslip_residual(wheel, law, t));
  }
  report.residual_at_pi_over_6 = noslip_residual(wheel, law, kPi / 6.0);
  report.arc_length_equal = report.max_arc_length_err <= tol;
  report.slipping = report.max_residual > 0.1;
  return report;
}

CongruenceReport verify_parabola_congruence(double d, std::span<const Angle> grid, double tol) {
  if (!(d > 0.0) || !std::isfinite(d)) throw Error(ErrorKind::BadParameter, "parabola congruence needs d > 0");
  CongruenceReport report;
  report.d = d;
  if (grid.empty()) {
    report.passed = true;
    return report;
  }
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  const RollScene scene(make_wheel(preset::FocalParabola{d}), {std::min(*lo, 0.0), std::max(*hi, 0.0)});
  const Point2 focus{0.0, -d};
  // Reflection in y = -d/2 carries the initial wheel onto the road.
  auto congruence = [d](Point2 p) { return Point2{p.x, -d - p.y}; };

  for (Angle t : grid) {
    const Point2 contact = contact_point(scene, t);
    const Point2 center = pose_apply(rolled_pose(scene, t), {0.0, 0.0});
    const Point2 preimage = congruence(contact);
    const double focus_directrix = std::abs(distance(focus, contact) - std::abs(contact.y));
    const double radius_match = std::abs(distance(center, contact) - norm(preimage));
    const double in_contact = distance(congruence(scene.wheel().point(t)), contact);
    report.max_focus_err = std::max({report.max_focus_err, focus_directrix, radius_match, in_contact});
  }
  report.passed = report.max_focus_err <= tol;
  return report;
}

namespace {

std::string line(const std::string& name, std::optional<double> err, Verdict v) {
  char buf[160];
  if (err) {
    std::snprintf(buf, sizeof buf, "%s %.3e %s", name.c_str(), *err, std::string(to_string(v)).c_str());
  } else {
    std::snprintf(buf, sizeof buf, "%s - %s", name.c_str(), std::string(to_string(v)).c_str());
  }
  return buf;
}

Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

}  // namespace

std::vector<std::string> report_lines(const CorollaryReport& r) {
  std::optional<double> slope;
  if (r.slope_max_err) slope = std::max(*r.slope_max_err, r.rolled_slope_max_err.value_or(0.0));
  return {line("center_above_contact", r.center_above_max_err, r.center_above),
          line("arc_length_match", r.arc_length_max_err, r.arc_length), line("slope_match", slope, r.slope)};
}

std::vector<std::string> report_lines(const NoSlipReport& r, const std::string& name) {
  return {line(name, r.max_residual, verdict_of(r.no_slip))};
}

std::vector<std::string> report_lines(const DoubledSpinReport& r, double /*tol*/) {
  return {line("arc_length_match", r.max_arc_length_err, verdict_of(r.arc_length_equal)),
          line("noslip_residual", r.max_residual, verdict_of(!r.slipping))};
}

}  // namespace roadwheel
