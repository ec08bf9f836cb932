#include <gtest/gtest.h>

#include <cmath>

#include "roadwheel/integrator.hpp"
#include "test_support.hpp"

using namespace roadwheel;
using testing_support::uniform;

namespace {

DenseTrajectory solve(const OdeRhs& f, double t0, double x0, double t1, StepperOptions opts = {}) {
  return DenseTrajectory(integrate_dp45(f, t0, x0, t1, opts));
}

}  // namespace

TEST(Dp45, ExponentialGrowth) {
  const DenseTrajectory tr = solve([](double, double x) { return x; }, 0.0, 1.0, 2.0);
  EXPECT_NEAR(tr.value(2.0), std::exp(2.0), 1e-9 * std::exp(2.0));
  EXPECT_EQ(tr.span().lo, 0.0);
  EXPECT_EQ(tr.span().hi, 2.0);
}

TEST(Dp45, DenseOutputBetweenNodes) {
  StepperOptions opts;
  opts.max_step = 0.1;
  const DenseTrajectory tr = solve([](double t, double) { return std::cos(t); }, 0.0, 0.0, 3.0, opts);
  for (int i = 0; i <= 300; ++i) {
    const double t = 0.01 * i;
    ASSERT_NEAR(tr.value(t), std::sin(t), 1e-9) << t;
  }
}

TEST(Dp45, BackwardIntegrationLandsOnTarget) {
  const auto segs = integrate_dp45([](double, double x) { return -x; }, 0.0, 1.0, -1.5, {});
  ASSERT_FALSE(segs.empty());
  EXPECT_EQ(segs.back().t0 + segs.back().h, -1.5);
  const DenseTrajectory tr(segs);
  EXPECT_NEAR(tr.value(-1.5), std::exp(1.5), 1e-9 * std::exp(1.5));
}

TEST(Dp45, NoSliverFinalStep) {
  // 0.01 does not divide 8 in binary; the final step must not collapse.
  const auto segs = integrate_dp45([](double t, double) { return 1.0 / std::cosh(t); }, 0.0, 0.0, -8.0, {});
  for (const auto& s : segs) EXPECT_GT(std::abs(s.h), 1e-6);
}

TEST(Dp45, StepUnderflowIsReported) {
  StepperOptions opts;
  opts.max_steps = 50;
  EXPECT_ERROR_KIND(integrate_dp45([](double t, double) { return std::cos(t); }, 0.0, 0.0, 10.0, opts),
                    ErrorKind::ToleranceNotMet);
}

TEST(Dp45, FixedStepUsesExactIndexedNodes) {
  StepperOptions opts;
  opts.fixed_step = true;
  opts.max_step = 0.1;
  const auto segs = integrate_dp45([](double, double) { return 2.0; }, 0.0, 0.0, 1.0, opts);
  ASSERT_EQ(segs.size(), 10u);
  for (std::size_t i = 0; i < segs.size(); ++i) EXPECT_EQ(segs[i].t0, 0.1 * static_cast<double>(i));
  const DenseTrajectory tr(segs);
  EXPECT_NEAR(tr.value(1.0), 2.0, 1e-14);
  EXPECT_NEAR(tr.value(0.55), 1.1, 1e-14);
}

TEST(Dp45, RejectsBadOptions) {
  StepperOptions opts;
  opts.max_step = 0.0;
  EXPECT_ERROR_KIND(integrate_dp45([](double, double) { return 1.0; }, 0.0, 0.0, 1.0, opts), ErrorKind::BadParameter);
}

TEST(DenseTrajectory, OutOfSpan) {
  const DenseTrajectory tr = solve([](double, double) { return 1.0; }, 0.0, 0.0, 1.0);
  EXPECT_ERROR_KIND(tr.value(1.0 + 1e-9), ErrorKind::OutOfRange);
  EXPECT_ERROR_KIND(tr.value(-1e-9), ErrorKind::OutOfRange);
}

TEST(DenseTrajectory, JoinsBothDirections) {
  auto fwd = integrate_dp45([](double t, double) { return std::cos(t); }, 0.0, 0.0, 1.0, {});
  auto bwd = integrate_dp45([](double t, double) { return std::cos(t); }, 0.0, 0.0, -1.0, {});
  fwd.insert(fwd.end(), bwd.begin(), bwd.end());
  const DenseTrajectory tr(fwd);
  EXPECT_EQ(tr.span().lo, -1.0);
  EXPECT_EQ(tr.span().hi, 1.0);
  const auto& ts = tr.node_times();
  for (std::size_t i = 1; i < ts.size(); ++i) ASSERT_GT(ts[i], ts[i - 1]);
  EXPECT_NEAR(tr.value(-0.77), std::sin(-0.77), 1e-10);
}

TEST(DenseTrajectory, RejectsGaps) {
  auto a = integrate_dp45([](double, double) { return 1.0; }, 0.0, 0.0, 1.0, {});
  auto b = integrate_dp45([](double, double) { return 1.0; }, 2.0, 2.0, 3.0, {});
  a.insert(a.end(), b.begin(), b.end());
  EXPECT_ERROR_KIND(DenseTrajectory{a}, ErrorKind::BadParameter);
}

TEST(GaussKronrod, ExactForHighDegreePolynomials) {
  const auto r = gauss_kronrod_15([](double x) { return std::pow(x, 20) - 3.0 * std::pow(x, 7); }, -1.0, 2.0);
  const double exact = (std::pow(2.0, 21) + 1.0) / 21.0 - 3.0 * (std::pow(2.0, 8) - 1.0) / 8.0;
  EXPECT_NEAR(r.value, exact, 1e-12 * exact);
}

TEST(GaussKronrod, ReversedLimitsFlipSign) {
  const auto a = gauss_kronrod_15([](double x) { return std::exp(x); }, 0.0, 1.0);
  const auto b = gauss_kronrod_15([](double x) { return std::exp(x); }, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(a.value, -b.value);
}

TEST(AdaptiveQuadrature, SmoothAndPeaked) {
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi, 1e-13, 1e-13).value, 2.0, 1e-12);
  const double peak = integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10, 1e-12).value;
  EXPECT_NEAR(peak, 2.0 / 1e-2 * std::atan(1.0 / 1e-2), 1e-8);
}

TEST(AdaptiveQuadrature, PanelBudget) {
  EXPECT_ERROR_KIND(integrate_adaptive([](double x) { return std::sqrt(std::abs(std::sin(1e4 * x))); }, 0.0, 10.0,
                                       1e-15, 1e-15, 20),
                    ErrorKind::ToleranceNotMet);
}

TEST(DerivativeWithin, CentralAndOneSided) {
  const auto f = [](double x) { return std::exp(x); };
  EXPECT_NEAR(derivative_within(f, 0.5, {0.0, 1.0}, 1e-5), std::exp(0.5), 1e-9);
  EXPECT_NEAR(derivative_within(f, 0.0, {0.0, 1.0}, 1e-5), 1.0, 1e-8);
  EXPECT_NEAR(derivative_within(f, 1.0, {0.0, 1.0}, 1e-5), std::exp(1.0), 1e-8);
}

TEST(IntegratorProperty, PolynomialRightHandSidesAreReproduced) {
  auto g = testing_support::rng(31);
  for (int i = 0; i < 200; ++i) {
    const double a = uniform(g, -2.0, 2.0);
    const double b = uniform(g, -2.0, 2.0);
    const double c = uniform(g, -2.0, 2.0);
    const double t1 = uniform(g, -3.0, 3.0);
    if (std::abs(t1) < 1e-3) continue;
    const auto segs = integrate_dp45([&](double t, double) { return a + b * t + c * t * t; }, 0.0, 0.0, t1, {});
    const DenseTrajectory tr(segs);
    const double ts = uniform(g, std::min(0.0, t1), std::max(0.0, t1));
    const double exact = a * ts + b * ts * ts / 2.0 + c * ts * ts * ts / 3.0;
    ASSERT_NEAR(tr.value(ts), exact, 1e-12 * std::max(1.0, std::abs(exact)));
  }
}
