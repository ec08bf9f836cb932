#include "roadwheel/wheel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "roadwheel/errors.hpp"
#include "roadwheel/integrator.hpp"

namespace roadwheel {
namespace {

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

WheelSpec::WheelSpec(Shape shape) : shape_(std::move(shape)) {
  const Interval d = shape_.domain;
  if (!shape_.radius) throw Error(ErrorKind::BadParameter, "wheel '" + shape_.label + "' has no radius");
  if (!(std::isfinite(d.lo) && std::isfinite(d.hi)) || !(d.lo <= 0.0 && 0.0 <= d.hi) || !(d.lo < d.hi)) {
    throw Error(ErrorKind::BadParameter,
                "wheel domain must be finite, nondegenerate and contain 0, got [" + describe(d.lo) + ", " +
                    describe(d.hi) + "]");
  }
  auto& bps = shape_.breakpoints;
  if (shape_.smoothness != Smoothness::piecewise_c1 && !bps.empty()) {
    throw Error(ErrorKind::BadParameter, "breakpoints are only meaningful for piecewise_c1 wheels");
  }
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (!(d.lo < bps[i] && bps[i] < d.hi)) {
      throw Error(ErrorKind::BadParameter, "breakpoint " + describe(bps[i]) + " not strictly inside domain");
    }
    if (i > 0 && !(bps[i - 1] < bps[i])) {
      throw Error(ErrorKind::BadParameter, "breakpoints must be strictly increasing");
    }
  }

  auto audit = [&](double t) {
    const double r = shape_.radius(t);
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw Error(ErrorKind::NonPositiveRadius,
                  "wheel '" + shape_.label + "' has r(" + describe(t) + ") = " + describe(r));
    }
  };
  const std::size_t n = kAuditPoints;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (i + 1 == n) ? d.hi : d.lo + d.width() * static_cast<double>(i) / static_cast<double>(n - 1);
    audit(t);
  }
  for (double bp : bps) audit(bp);
}

void WheelSpec::check_domain(Angle theta) const {
  if (!shape_.domain.contains(theta)) {
    throw Error(ErrorKind::OutOfDomain, "theta = " + describe(theta) + " outside wheel '" + shape_.label +
                                            "' domain [" + describe(shape_.domain.lo) + ", " +
                                            describe(shape_.domain.hi) + "]");
  }
}

double WheelSpec::radius(Angle theta) const {
  check_domain(theta);
  const double r = shape_.radius(theta);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::NonPositiveRadius, "r(" + describe(theta) + ") = " + describe(r));
  }
  return r;
}

bool WheelSpec::is_breakpoint(Angle theta) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(theta));
  return std::any_of(shape_.breakpoints.begin(), shape_.breakpoints.end(),
                     [&](double bp) { return std::abs(bp - theta) <= tol; });
}

Interval WheelSpec::piece_containing(Angle theta) const {
  const auto& bps = shape_.breakpoints;
  auto it = std::upper_bound(bps.begin(), bps.end(), theta);
  const double lo = (it == bps.begin()) ? shape_.domain.lo : *std::prev(it);
  const double hi = (it == bps.end()) ? shape_.domain.hi : *it;
  return {lo, hi};
}

std::vector<double> WheelSpec::breakpoints_within(Interval span) const {
  std::vector<double> out;
  for (double bp : shape_.breakpoints) {
    if (span.lo < bp && bp < span.hi) out.push_back(bp);
  }
  return out;
}

std::optional<double> WheelSpec::radius_rate(Angle theta) const {
  check_domain(theta);
  if (is_breakpoint(theta)) return std::nullopt;
  if (shape_.radius_rate) return shape_.radius_rate(theta);
  if (shape_.smoothness == Smoothness::continuous_only) return std::nullopt;

  const std::function<double(double)> r = [this](double t) { return radius(t); };
  return derivative_within(r, theta, piece_containing(theta), 1e-6 * std::max(1.0, std::abs(theta)));
}

Point2 WheelSpec::point(Angle theta) const {
  const double r = radius(theta);
  return {r * std::sin(theta), -r * std::cos(theta)};
}

Interval WheelSpec::body() const {
  if (shape_.period) {
    const double half = *shape_.period / 2.0;
    return {std::max(shape_.domain.lo, -half), std::min(shape_.domain.hi, half)};
  }
  return shape_.domain;
}

double weierstrass_series(double a, double b, int terms, double theta) {
  double sum = 0.0;
  double amp = 1.0;
  double freq = 1.0;
  for (int n = 0; n < terms; ++n) {
    sum += amp * std::cos(freq * theta);
    amp /= a;
    freq *= b;
  }
  return sum;
}

namespace {

Interval open_domain(double half_width, double margin, const char* name) {
  if (!(margin > 0.0) || !(margin < half_width)) {
    throw Error(ErrorKind::BadParameter,
                std::string(name) + " needs 0 < domain_margin < " + describe(half_width) + ", got " + describe(margin));
  }
  return {-half_width + margin, half_width - margin};
}

struct PresetBuilder {
  double margin;

  WheelSpec operator()(const preset::UnitCircle&) const {
    return WheelSpec({"unit-circle", [](double) { return 1.0; }, [](double) { return 0.0; },
                      {-4.0 * kPi, 4.0 * kPi}, Smoothness::analytic, {}, 2.0 * kPi});
  }

  WheelSpec operator()(const preset::LineSecant&) const {
    return WheelSpec({"line-secant", [](double t) { return 1.0 / std::cos(t); },
                      [](double t) { return std::tan(t) / std::cos(t); }, open_domain(kPi / 2.0, margin, "line-secant"),
                      Smoothness::analytic, {}, std::nullopt});
  }

  WheelSpec operator()(const preset::RegularPolygon& p) const {
    if (p.sides < 3) throw Error(ErrorKind::BadParameter, "regular polygon needs sides >= 3");
    if (!(p.apothem > 0.0) || !std::isfinite(p.apothem)) {
      throw Error(ErrorKind::BadParameter, "regular polygon needs apothem > 0");
    }
    const double sector = 2.0 * kPi / p.sides;
    const double apothem = p.apothem;
    // Offset from the center of the side facing theta.
    auto local = [sector](double t) { return t - sector * std::round(t / sector); };
    const Interval domain{-2.0 * kPi, 2.0 * kPi};
    std::vector<double> bps;
    for (int k = -2 * p.sides; k <= 2 * p.sides; ++k) {
      const double bp = (2 * k + 1) * kPi / p.sides;
      if (domain.lo < bp && bp < domain.hi) bps.push_back(bp);
    }
    return WheelSpec({"regular-polygon-" + std::to_string(p.sides),
                      [apothem, local](double t) { return apothem / std::cos(local(t)); },
                      [apothem, local](double t) {
                        const double u = local(t);
                        return apothem * std::tan(u) / std::cos(u);
                      },
                      domain, Smoothness::piecewise_c1, std::move(bps), 2.0 * kPi});
  }

  WheelSpec operator()(const preset::PoinsotSech&) const {
    return WheelSpec({"poinsot-sech", [](double t) { return 1.0 / std::cosh(t); },
                      [](double t) { return -std::tanh(t) / std::cosh(t); }, {-16.0, 16.0}, Smoothness::analytic, {},
                      std::nullopt});
  }

  WheelSpec operator()(const preset::LogSpiral& p) const {
    if (!std::isfinite(p.k)) throw Error(ErrorKind::BadParameter, "log spiral k must be finite");
    const double k = p.k;
    return WheelSpec({"log-spiral", [k](double t) { return std::exp(k * t); },
                      [k](double t) { return k * std::exp(k * t); }, {-4.0 * kPi, 4.0 * kPi}, Smoothness::analytic, {},
                      std::nullopt});
  }

  WheelSpec operator()(const preset::OffsetCircle&) const {
    return WheelSpec({"offset-circle", [](double t) { return 2.0 * std::cos(t); },
                      [](double t) { return -2.0 * std::sin(t); }, open_domain(kPi / 2.0, margin, "offset-circle"),
                      Smoothness::analytic, {}, std::nullopt});
  }

  WheelSpec operator()(const preset::FocalParabola& p) const {
    if (!(p.d > 0.0) || !std::isfinite(p.d)) throw Error(ErrorKind::BadParameter, "focal parabola needs d > 0");
    const double d = p.d;
    return WheelSpec({"focal-parabola", [d](double t) { return d / (1.0 + std::cos(t)); },
                      [d](double t) {
                        const double c = 1.0 + std::cos(t);
                        return d * std::sin(t) / (c * c);
                      },
                      open_domain(kPi, margin, "focal-parabola"), Smoothness::analytic, {}, std::nullopt});
  }

  WheelSpec operator()(const preset::Weierstrass& p) const {
    if (!(p.a > 1.0 && p.b > p.a) || !std::isfinite(p.b)) {
      throw Error(ErrorKind::BadParameter, "weierstrass needs b > a > 1");
    }
    if (p.terms < 1) throw Error(ErrorKind::BadParameter, "weierstrass needs terms >= 1");
    if (!(p.sign == 1.0 || p.sign == -1.0)) throw Error(ErrorKind::BadParameter, "weierstrass sign must be +1 or -1");
    if (!std::isfinite(p.level_offset)) throw Error(ErrorKind::BadParameter, "weierstrass level_offset must be finite");

    auto amps = std::make_shared<std::vector<double>>();
    auto freqs = std::make_shared<std::vector<double>>();
    double amp = 1.0;
    double freq = 1.0;
    for (int n = 0; n < p.terms; ++n) {
      amps->push_back(amp);
      freqs->push_back(freq);
      amp /= p.a;
      freq *= p.b;
    }
    const double offset = p.level_offset;
    const double sign = p.sign;
    auto radius = [amps, freqs, offset, sign](double t) {
      double sum = 0.0;
      for (std::size_t n = 0; n < amps->size(); ++n) sum += (*amps)[n] * std::cos((*freqs)[n] * t);
      return offset + sign * sum;
    };
    std::optional<double> period;
    if (p.b == std::floor(p.b)) period = 2.0 * kPi;
    return WheelSpec({"weierstrass", radius, nullptr, {-4.0 * kPi, 4.0 * kPi}, Smoothness::continuous_only, {}, period});
  }
};

}  // namespace

WheelSpec make_wheel(const WheelPreset& preset, double domain_margin) {
  return std::visit(PresetBuilder{domain_margin}, preset);
}

}  // namespace roadwheel
