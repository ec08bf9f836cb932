#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "roadwheel/geom.hpp"

namespace roadwheel {

using RealFn = std::function<double(double)>;

enum class Smoothness {
  analytic,
  piecewise_c1,     // C1 between the breakpoints, cusps at them
  continuous_only,  // no derivative assumed anywhere
};

/// A polar wheel W(theta) = r(theta) (sin theta, -cos theta) with its center at
/// the origin. The radius is audited for positivity at construction and
/// re-checked on every evaluation.
class WheelSpec {
 public:
  struct Shape {
    std::string label;
    RealFn radius;
    RealFn radius_rate;  // empty when no closed-form derivative is known
    Interval domain;
    Smoothness smoothness = Smoothness::analytic;
    std::vector<double> breakpoints;
    std::optional<double> period;
  };

  static constexpr std::size_t kAuditPoints = 10001;

  explicit WheelSpec(Shape shape);

  const std::string& label() const { return shape_.label; }
  Interval domain() const { return shape_.domain; }
  Smoothness smoothness() const { return shape_.smoothness; }
  const std::vector<double>& breakpoints() const { return shape_.breakpoints; }
  std::optional<double> period() const { return shape_.period; }
  bool has_closed_form_rate() const { return static_cast<bool>(shape_.radius_rate); }

  /// r(theta) > 0. Throws OutOfDomain or NonPositiveRadius.
  double radius(Angle theta) const;

  /// dr/dtheta: closed form when available, otherwise a central difference
  /// inside the current smooth piece. Empty at breakpoints and for
  /// continuous_only wheels.
  std::optional<double> radius_rate(Angle theta) const;

  /// W(theta) = r(theta) (sin theta, -cos theta).
  Point2 point(Angle theta) const;

  bool is_breakpoint(Angle theta) const;

  /// The smooth piece [bp_k, bp_{k+1}] (or domain end) containing theta. For
  /// a breakpoint the piece to its right is returned.
  Interval piece_containing(Angle theta) const;

  /// Breakpoints strictly inside [a, b], ascending.
  std::vector<double> breakpoints_within(Interval span) const;

  /// The part of the domain that draws the wheel once: one period centered
  /// at 0 for periodic wheels, the whole domain otherwise.
  Interval body() const;

 private:
  void check_domain(Angle theta) const;

  Shape shape_;
};

namespace preset {

struct UnitCircle {};
struct LineSecant {};
struct RegularPolygon {
  int sides = 4;
  double apothem = 1.0;
};
struct PoinsotSech {};
struct LogSpiral {
  double k = 0.5;
};
struct OffsetCircle {};
struct FocalParabola {
  double d = 0.5;
};
/// r(theta) = level_offset + sign * sum_{n < terms} a^-n cos(b^n theta).
/// The default sign -1 keeps the radius in [1, 5] for offset 3.
struct Weierstrass {
  double a = 2.0;
  double b = 3.0;
  double level_offset = 3.0;
  int terms = 50;
  double sign = -1.0;
};

}  // namespace preset

using WheelPreset = std::variant<preset::UnitCircle, preset::LineSecant, preset::RegularPolygon,
                                 preset::PoinsotSech, preset::LogSpiral, preset::OffsetCircle,
                                 preset::FocalParabola, preset::Weierstrass>;

inline constexpr double kDefaultDomainMargin = 0.2;

/// Builds a catalog wheel. Open natural domains are shrunk by domain_margin
/// at each open end. Throws BadParameter or NonPositiveRadius.
WheelSpec make_wheel(const WheelPreset& preset, double domain_margin = kDefaultDomainMargin);

/// Sum_{n < terms} a^-n cos(b^n theta), the raw truncated Weierstrass series.
double weierstrass_series(double a, double b, int terms, double theta);

}  // namespace roadwheel
