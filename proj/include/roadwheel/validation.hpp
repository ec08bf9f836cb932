#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roadwheel/geom.hpp"
#include "roadwheel/kinematics.hpp"
#include "roadwheel/wheel.hpp"

namespace roadwheel {

/// A candidate rolling motion: rho(theta) is the spin that brings W(theta)
/// into contact, tau(phi) the horizontal shift after spinning phi.
class RollingLaw {
 public:
  /// tau(phi + delta) - tau(phi).
  using Increment = std::function<double(double phi, double delta)>;

  /// Throws BadParameter unless rho(0) = 0 and tau(0) = 0.
  RollingLaw(RealFn rho, RealFn tau, RealFn tau_rate = nullptr, double fd_step = 1e-6);

  /// Lets the finite-difference path ask for increments directly, which
  /// matters when tau is only known through quadrature of a rough integrand.
  RollingLaw& with_increment(Increment inc);

  Angle rho(Angle theta) const { return rho_(theta); }
  double tau(Angle phi) const { return tau_(phi); }
  bool has_tau_rate() const { return static_cast<bool>(tau_rate_); }
  double fd_step() const { return fd_step_; }

  /// Closed-form tau' when present, otherwise a central difference with fd_step.
  double tau_rate(Angle phi) const;

 private:
  RealFn rho_;
  RealFn tau_;
  RealFn tau_rate_;
  Increment increment_;
  double fd_step_;
};

/// rho = theta, tau = x(phi) of the scene's road. Wheels with a derivative get
/// tau' = r; continuous_only wheels fall back to differences of quadrature
/// increments with step fd_step.
RollingLaw canonical_law(const RollScene& scene, double fd_step = 1e-8);

/// rho = 2 theta, tau = 2 tan(phi / 2): matches arc lengths on the secant
/// wheel but slips.
RollingLaw doubled_spin_law();

/// Velocity of W(theta) at the moment the law says it touches the road.
Point2 noslip_velocity(const WheelSpec& wheel, const RollingLaw& law, Angle theta);
double noslip_residual(const WheelSpec& wheel, const RollingLaw& law, Angle theta);

enum class Verdict { pass, fail, not_applicable };
std::string_view to_string(Verdict v);

struct NoSlipReport {
  std::vector<Angle> thetas;
  std::vector<double> residuals;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool no_slip = false;
};

NoSlipReport noslip_report(const WheelSpec& wheel, const RollingLaw& law, std::span<const Angle> thetas, double tol);

/// Residual tolerance by smoothness class: 1e-6 with a closed-form tau',
/// 1e-4 for continuous_only wheels driven by finite differences.
double default_noslip_tolerance(const WheelSpec& wheel);

struct CorollaryTolerances {
  double center = 1e-12;
  double arc_length = 1e-8;
  double slope = 1e-6;
};

/// A maximum error per check; empty means the check does not apply to this
/// wheel (no derivative, no arc length).
struct CorollaryReport {
  double center_above_max_err = 0.0;
  std::optional<double> arc_length_max_err;
  std::optional<double> slope_max_err;          // road slope vs -r'/r
  std::optional<double> rolled_slope_max_err;   // rolled wheel tangent vs road slope
  std::size_t slope_points_skipped = 0;
  Verdict center_above = Verdict::fail;
  Verdict arc_length = Verdict::not_applicable;
  Verdict slope = Verdict::not_applicable;

  bool passed() const;
};

CorollaryReport verify_corollaries(const RollScene& scene, std::span<const Angle> grid,
                                   const CorollaryTolerances& tol = {});

/// Road slope dy/dx at the contact point for theta, by central differences of
/// road_height in x inside the smooth piece.
std::optional<double> road_slope_at(const RollScene& scene, Angle theta);

struct DoubledSpinReport {
  double max_arc_length_err = 0.0;
  double max_residual = 0.0;
  double residual_at_pi_over_6 = 0.0;
  bool arc_length_equal = false;
  bool slipping = false;
};

/// The secant wheel rolled by doubled_spin_law on theta in [0, pi/3].
DoubledSpinReport run_section4_counterexample(double tol, std::size_t grid_points = 201);

struct CongruenceReport {
  double d = 0.0;
  double max_focus_err = 0.0;
  bool passed = false;
};

/// Focus-directrix and reflection checks for the focal parabola wheel with
/// focus of the road at (0, -d).
CongruenceReport verify_parabola_congruence(double d, std::span<const Angle> grid, double tol);

/// One line per check: "name max_error verdict".
std::vector<std::string> report_lines(const CorollaryReport& r);
std::vector<std::string> report_lines(const NoSlipReport& r, const std::string& name);
std::vector<std::string> report_lines(const DoubledSpinReport& r, double tol);

}  // namespace roadwheel
