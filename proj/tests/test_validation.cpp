#include <gtest/gtest.h>

#include <cmath>

#include "roadwheel/validation.hpp"
#include "test_support.hpp"

using namespace roadwheel;
using testing_support::uniform;

namespace {

/// Residual of the canonical law on the monster wheel when tau' is the
/// symmetric difference quotient of exact increments: each cosine term is
/// averaged over [theta - h, theta + h], scaling it by sinc(3^n h).
double monster_difference_floor(double theta, double h) {
  double s = 0.0;
  double amp = 1.0;
  double freq = 1.0;
  for (int n = 0; n < 50; ++n) {
    const double z = freq * h;
    s += amp * std::cos(freq * theta) * (1.0 - std::sin(z) / z);
    amp *= 0.5;
    freq *= 3.0;
  }
  return std::abs(s);
}

struct Case {
  WheelPreset preset;
  Interval range;
};

std::vector<Case> all_cases() {
  return {{preset::UnitCircle{}, {-kPi, kPi}},         {preset::LineSecant{}, {-1.3, 1.3}},
          {preset::RegularPolygon{4, 1.0}, {-kPi, kPi}}, {preset::RegularPolygon{3, 1.0}, {-kPi, kPi}},
          {preset::RegularPolygon{6, 2.0}, {-kPi, kPi}}, {preset::PoinsotSech{}, {-8.0, 8.0}},
          {preset::LogSpiral{0.5}, {-2.0, 2.0}},        {preset::LogSpiral{1.0}, {-1.0, 1.0}},
          {preset::OffsetCircle{}, {-1.37, 1.37}},      {preset::FocalParabola{0.5}, {-1.5, 1.5}},
          {preset::FocalParabola{2.0}, {-1.5, 1.5}},    {preset::Weierstrass{}, {-2.0 * kPi, 2.0 * kPi}}};
}

}  // namespace

TEST(RollingLaw, MustStartAtRest) {
  EXPECT_ERROR_KIND(RollingLaw([](double t) { return t + 1.0; }, [](double p) { return p; }),
                    ErrorKind::BadParameter);
  EXPECT_ERROR_KIND(RollingLaw([](double t) { return t; }, [](double p) { return p + 1.0; }),
                    ErrorKind::BadParameter);
  EXPECT_ERROR_KIND(RollingLaw([](double t) { return t; }, [](double p) { return p; }, nullptr, 0.0),
                    ErrorKind::BadParameter);
}

TEST(RollingLaw, DifferenceRateWithoutClosedForm) {
  const RollingLaw law([](double t) { return t; }, [](double p) { return std::sin(p); }, nullptr, 1e-5);
  EXPECT_FALSE(law.has_tau_rate());
  EXPECT_NEAR(law.tau_rate(0.4), std::cos(0.4), 1e-9);
}

TEST(NoSlipResidual, CanonicalLawOnSecantWheel) {
  const RollScene sec(make_wheel(preset::LineSecant{}), {-1.3, 1.3});
  const RollingLaw law = canonical_law(sec);
  EXPECT_TRUE(law.has_tau_rate());
  EXPECT_LE(noslip_residual(sec.wheel(), law, kPi / 6.0), 1e-9);
}

TEST(NoSlipResidual, DoubledSpinLawSlips) {
  const WheelSpec sec = make_wheel(preset::LineSecant{});
  const RollingLaw law = doubled_spin_law();
  EXPECT_NEAR(noslip_residual(sec, law, kPi / 6.0), 2.0 / 3.0, 1e-12);
  const Point2 v = noslip_velocity(sec, law, kPi / 6.0);
  EXPECT_NEAR(v.x, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(v.y, 0.5773502691896258, 1e-12);
  EXPECT_NEAR(noslip_residual(sec, law, 0.0), 0.0, 1e-15);
}

TEST(NoSlipResidual, MonsterDifferenceQuotientTracksItsFloor) {
  const RollScene scene(make_wheel(preset::Weierstrass{}), {-2.0 * kPi, 2.0 * kPi});
  const RollingLaw coarse = canonical_law(scene, 1e-6);
  const RollingLaw fine = canonical_law(scene);
  EXPECT_FALSE(fine.has_tau_rate());
  EXPECT_EQ(fine.fd_step(), 1e-8);
  auto g = testing_support::rng(61);
  double worst_coarse = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = uniform(g, -2.0 * kPi + 0.01, 2.0 * kPi - 0.01);
    const double rc = noslip_residual(scene.wheel(), coarse, t);
    worst_coarse = std::max(worst_coarse, rc);
    // Quadrature of the increments adds little on top of the averaging floor.
    ASSERT_NEAR(rc, monster_difference_floor(t, 1e-6), 2e-6) << t;
    ASSERT_LE(noslip_residual(scene.wheel(), fine, t), 1e-5) << t;
  }
  // With h = 1e-6 the floor alone is above 1e-4 somewhere; the default step is 1e-8.
  EXPECT_GT(worst_coarse, 1e-4);
}

TEST(NoSlipReport, Invariants) {
  const WheelSpec sec = make_wheel(preset::LineSecant{});
  const auto grid = linspace(0.0, 1.0, 50);
  const NoSlipReport r = noslip_report(sec, doubled_spin_law(), grid, 0.5);
  ASSERT_EQ(r.residuals.size(), grid.size());
  EXPECT_EQ(r.max_residual, *std::max_element(r.residuals.begin(), r.residuals.end()));
  EXPECT_EQ(r.no_slip, r.max_residual <= 0.5);
  EXPECT_FALSE(r.no_slip);
  for (double v : r.residuals) EXPECT_GE(v, 0.0);
  EXPECT_EQ(default_noslip_tolerance(sec), 1e-6);
  EXPECT_EQ(default_noslip_tolerance(make_wheel(preset::Weierstrass{})), 1e-4);
}

TEST(ValidationProperty, CanonicalLawIsSound) {
  for (const auto& c : all_cases()) {
    const RollScene scene(make_wheel(c.preset), c.range);
    const NoSlipReport r = noslip_report(scene.wheel(), canonical_law(scene), linspace(c.range.lo, c.range.hi, 500),
                                         default_noslip_tolerance(scene.wheel()));
    EXPECT_TRUE(r.no_slip) << scene.wheel().label() << " max " << r.max_residual;
  }
}

TEST(ValidationProperty, HalfTurnOffsetDoublesInsteadOfCancelling) {
  // rho = theta + pi puts W(theta) on the road line, but the contact point
  // then moves at twice the rolling speed.
  auto g = testing_support::rng(62);
  for (const auto& c : all_cases()) {
    const WheelSpec w = make_wheel(c.preset);
    for (int i = 0; i < 50; ++i) {
      const double t = uniform(g, c.range.lo, c.range.hi);
      const double r = w.radius(t);
      const Point2 v = carried_velocity(w.point(t), t + kPi, r);
      ASSERT_LE(std::abs(v.y), 1e-9 * std::max(1.0, r));
      ASSERT_GE(v.x, r);
      ASSERT_NEAR(v.x, 2.0 * r, 1e-9 * std::max(1.0, r));
    }
  }
}

TEST(Corollaries, UnitCircle) {
  const RollScene scene(make_wheel(preset::UnitCircle{}), {-kPi, kPi});
  const CorollaryReport r = verify_corollaries(scene, linspace(-kPi, kPi, 200));
  EXPECT_LE(r.center_above_max_err, 1e-10);
  ASSERT_TRUE(r.arc_length_max_err.has_value());
  EXPECT_LE(*r.arc_length_max_err, 1e-10);
  ASSERT_TRUE(r.slope_max_err.has_value());
  EXPECT_LE(*r.slope_max_err, 1e-10);
  EXPECT_TRUE(r.passed());
}

TEST(Corollaries, SecantSlopeAtTheArchEnd) {
  const RollScene scene(make_wheel(preset::LineSecant{}), {-1.3, 1.3});
  const auto slope = road_slope_at(scene, kPi / 4.0);
  ASSERT_TRUE(slope.has_value());
  EXPECT_NEAR(*slope, -1.0, 1e-8);
  const WheelSpec& w = scene.wheel();
  EXPECT_NEAR(-*w.radius_rate(kPi / 4.0) / w.radius(kPi / 4.0), -1.0, 1e-12);
}

TEST(Corollaries, MonsterOnlyHasCenterCheck) {
  const RollScene scene(make_wheel(preset::Weierstrass{}), {0.0, 2.0 * kPi});
  const CorollaryReport r = verify_corollaries(scene, linspace(0.0, 2.0 * kPi, 100));
  EXPECT_EQ(r.center_above, Verdict::pass);
  EXPECT_EQ(r.arc_length, Verdict::not_applicable);
  EXPECT_EQ(r.slope, Verdict::not_applicable);
  EXPECT_FALSE(r.arc_length_max_err.has_value());
  EXPECT_FALSE(r.slope_max_err.has_value());
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(road_slope_at(scene, 1.0).has_value());
}

TEST(Corollaries, CuspsAreSkipped) {
  const RollScene scene(make_wheel(preset::RegularPolygon{4, 1.0}), {-kPi, kPi});
  std::vector<Angle> grid = linspace(-3.0, 3.0, 101);
  grid.push_back(kPi / 4.0);
  grid.push_back(-3.0 * kPi / 4.0);
  const CorollaryReport r = verify_corollaries(scene, grid);
  EXPECT_EQ(r.slope_points_skipped, 2u);
  EXPECT_TRUE(r.passed());
}

TEST(ValidationProperty, CorollariesHoldOnSmoothAndPiecewisePresets) {
  for (const auto& c : all_cases()) {
    const RollScene scene(make_wheel(c.preset), c.range);
    if (scene.wheel().smoothness() == Smoothness::continuous_only) continue;
    const CorollaryReport r = verify_corollaries(scene, linspace(c.range.lo, c.range.hi, 500));
    EXPECT_LE(r.center_above_max_err, 1e-12) << scene.wheel().label();
    EXPECT_LE(r.arc_length_max_err.value(), 1e-8) << scene.wheel().label();
    EXPECT_LE(r.slope_max_err.value(), 1e-6) << scene.wheel().label();
    EXPECT_LE(r.rolled_slope_max_err.value(), 1e-6) << scene.wheel().label();
    EXPECT_TRUE(r.passed()) << scene.wheel().label();
  }
}

TEST(DoubledSpin, ArcLengthsMatchButTheWheelSlips) {
  const DoubledSpinReport r = run_section4_counterexample(1e-9);
  EXPECT_TRUE(r.arc_length_equal);
  EXPECT_LE(r.max_arc_length_err, 1e-9);
  EXPECT_TRUE(r.slipping);
  EXPECT_GE(r.max_residual, 0.5);
  EXPECT_NEAR(r.residual_at_pi_over_6, 2.0 / 3.0, 1e-9);
}

TEST(DoubledSpin, PointExamples) {
  const RollingLaw law = doubled_spin_law();
  // Road length tau(2 theta) - tan theta equals the wheel length tan theta.
  for (double t : {kPi / 6.0, kPi / 4.0}) {
    EXPECT_NEAR(law.tau(2.0 * t) - std::tan(t), std::tan(t), 1e-15);
  }
  EXPECT_NEAR(law.tau(kPi / 2.0) - 1.0, 1.0, 1e-15);
  EXPECT_GT(noslip_residual(make_wheel(preset::LineSecant{}), law, kPi / 4.0), 0.0);
}

TEST(ParabolaCongruence, Examples) {
  const RollScene scene(make_wheel(preset::FocalParabola{0.5}), {-1.7, 1.7});
  const Point2 focus{0.0, -0.5};
  const Point2 p = contact_point(scene, kPi / 2.0);
  EXPECT_NEAR(distance(focus, p), std::abs(p.y), 1e-10);
  EXPECT_NEAR(distance(focus, p), 0.5, 1e-10);
  const Point2 vertex = contact_point(scene, 0.0);
  EXPECT_EQ(vertex, (Point2{0.0, -0.25}));
  EXPECT_EQ(distance(focus, vertex), 0.25);
  EXPECT_EQ(distance({0.0, 0.0}, vertex), scene.wheel().radius(0.0));
}

TEST(ParabolaCongruence, HoldsForSeveralFocalLengths) {
  const auto grid = linspace(-1.2, 1.2, 241);
  for (double d : {0.25, 0.5, 1.0, 2.0}) {
    const CongruenceReport r = verify_parabola_congruence(d, grid, 1e-8);
    EXPECT_TRUE(r.passed) << d << " err " << r.max_focus_err;
    EXPECT_LE(r.max_focus_err, 1e-8);
    EXPECT_EQ(r.d, d);
  }
  EXPECT_ERROR_KIND(verify_parabola_congruence(0.0, grid, 1e-8), ErrorKind::BadParameter);
  EXPECT_ERROR_KIND(verify_parabola_congruence(-1.0, grid, 1e-8), ErrorKind::BadParameter);
}

TEST(ReportLines, OneCheckPerLine) {
  const RollScene scene(make_wheel(preset::UnitCircle{}), {-1.0, 1.0});
  const auto lines = report_lines(verify_corollaries(scene, linspace(-1.0, 1.0, 11)));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0].rfind("center_above_contact ", 0), 0u);
  EXPECT_NE(lines[0].find(" pass"), std::string::npos);
  const auto doubled = report_lines(run_section4_counterexample(1e-9), 1e-9);
  ASSERT_EQ(doubled.size(), 2u);
  EXPECT_NE(doubled[1].find(" fail"), std::string::npos);
  const RollScene monster(make_wheel(preset::Weierstrass{}), {0.0, 1.0});
  const auto m = report_lines(verify_corollaries(monster, linspace(0.0, 1.0, 5)));
  EXPECT_EQ(m[1], "arc_length_match - n/a");
}
