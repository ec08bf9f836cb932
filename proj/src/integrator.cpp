#include "roadwheel/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "roadwheel/errors.hpp"

namespace roadwheel {

double DenseSegment::value(double t) const {
  const double s = (t - t0) / h;
  const double s1 = 1.0 - s;
  return c[0] + s * (c[1] + s1 * (c[2] + s * (c[3] + s1 * c[4])));
}

DenseTrajectory::DenseTrajectory(std::vector<DenseSegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw Error(ErrorKind::BadParameter, "trajectory needs at least one segment");
  std::sort(segments_.begin(), segments_.end(),
            [](const DenseSegment& a, const DenseSegment& b) { return a.t_lo() < b.t_lo(); });
  nodes_t_.reserve(segments_.size() + 1);
  nodes_x_.reserve(segments_.size() + 1);
  nodes_t_.push_back(segments_.front().t_lo());
  nodes_x_.push_back(0.0);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    if (i > 0 && seg.t_lo() != nodes_t_.back()) {
      throw Error(ErrorKind::BadParameter, "trajectory segments are not contiguous");
    }
    // Exact node values: c0 at t0, c0 + c1 at t0 + h.
    const double x_hi = seg.h >= 0.0 ? seg.c[0] + seg.c[1] : seg.c[0];
    const double x_lo = seg.h >= 0.0 ? seg.c[0] : seg.c[0] + seg.c[1];
    if (i == 0) nodes_x_.back() = x_lo;
    nodes_t_.push_back(seg.t_hi());
    nodes_x_.push_back(x_hi);
  }
}

double DenseTrajectory::value(double t) const {
  if (!(nodes_t_.front() <= t && t <= nodes_t_.back())) {
    std::ostringstream os;
    os << "t = " << t << " outside trajectory [" << nodes_t_.front() << ", " << nodes_t_.back() << "]";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  auto it = std::upper_bound(nodes_t_.begin(), nodes_t_.end(), t);
  std::size_t idx = static_cast<std::size_t>(std::distance(nodes_t_.begin(), it));
  idx = idx == 0 ? 0 : idx - 1;
  if (idx >= segments_.size()) return nodes_x_.back();
  if (t == nodes_t_[idx]) return nodes_x_[idx];
  return segments_[idx].value(t);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                 b6 = 11.0 / 84.0;
// Difference between the 5th- and 4th-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense output weights (Hairer & Wanner, DOPRI5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct StepResult {
  double x1;
  double err;
  double k1, k3, k4, k5, k6, k7;
};

StepResult dp_step(const OdeRhs& rhs, double t, double x, double h, double k1) {
  const double k2 = rhs(t + c2 * h, x + h * a21 * k1);
  const double k3 = rhs(t + c3 * h, x + h * (a31 * k1 + a32 * k2));
  const double k4 = rhs(t + c4 * h, x + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const double k5 = rhs(t + c5 * h, x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const double k6 = rhs(t + h, x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  const double x1 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const double k7 = rhs(t + h, x1);
  const double err = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
  return {x1, err, k1, k3, k4, k5, k6, k7};
}

DenseSegment dense_segment(double t, double x, double h, const StepResult& s) {
  const double ydiff = s.x1 - x;
  const double bspl = h * s.k1 - ydiff;
  DenseSegment seg;
  seg.t0 = t;
  seg.h = h;
  seg.c = {x, ydiff, bspl, ydiff - h * s.k7 - bspl,
           h * (d1 * s.k1 + d3 * s.k3 + d4 * s.k4 + d5 * s.k5 + d6 * s.k6 + d7 * s.k7)};
  return seg;
}

}  // namespace

std::vector<DenseSegment> integrate_dp45(const OdeRhs& rhs, double t0, double x0, double t1,
                                         const StepperOptions& opts) {
  std::vector<DenseSegment> out;
  if (t1 == t0) return out;
  if (!(opts.max_step > 0.0) || !(opts.abs_tol > 0.0) || !(opts.rel_tol >= 0.0)) {
    throw Error(ErrorKind::BadParameter, "stepper needs max_step > 0 and positive tolerances");
  }
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  if (opts.fixed_step) {
    const auto n = static_cast<std::size_t>(std::ceil(span / opts.max_step * (1.0 - 1e-12)));
    const std::size_t steps = std::max<std::size_t>(n, 1);
    if (steps > opts.max_steps) throw Error(ErrorKind::ToleranceNotMet, "fixed-step grid exceeds max_steps");
    out.reserve(steps);
    const double h = (t1 - t0) / static_cast<double>(steps);
    double x = x0;
    double t = t0;
    for (std::size_t i = 0; i < steps; ++i) {
      // Node times come from the index, not accumulation, so the grid is exact.
      const double t_next = (i + 1 == steps) ? t1 : t0 + static_cast<double>(i + 1) * h;
      const double hi = t_next - t;
      const StepResult s = dp_step(rhs, t, x, hi, rhs(t, x));
      DenseSegment seg;
      seg.t0 = t;
      seg.h = hi;
      seg.c = {x, s.x1 - x, 0.0, 0.0, 0.0};
      out.push_back(seg);
      x = s.x1;
      t = t_next;
    }
    return out;
  }

  double t = t0;
  double x = x0;
  double k1 = rhs(t, x);
  double h = dir * std::min(opts.max_step, span);
  std::size_t steps = 0;
  while (dir * (t1 - t) > 0.0) {
    if (++steps > opts.max_steps) {
      throw Error(ErrorKind::ToleranceNotMet, "adaptive integration exceeded max_steps");
    }
    const double remaining = t1 - t;
    bool last = false;
    if (std::abs(h) >= std::abs(remaining) * (1.0 - 1e-8)) {
      h = remaining;
      last = true;
    } else if (std::abs(h) * 2.0 > std::abs(remaining)) {
      // Split what is left evenly rather than leave a sliver of a step.
      h = remaining / 2.0;
    }
    const StepResult s = dp_step(rhs, t, x, h, k1);
    const double scale = opts.abs_tol + opts.rel_tol * std::max(std::abs(x), std::abs(s.x1));
    const double ratio = s.err / scale;
    if (ratio <= 1.0) {
      out.push_back(dense_segment(t, x, h, s));
      t = last ? t1 : t + h;
      x = s.x1;
      k1 = s.k7;
      const double grow = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
      h = dir * std::min(opts.max_step, std::abs(h) * grow);
    } else {
      h *= std::clamp(0.9 * std::pow(ratio, -0.2), 0.1, 0.9);
      const double floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
      if (std::abs(h) < floor) {
        std::ostringstream os;
        os << "step size underflow at t = " << t;
        throw Error(ErrorKind::ToleranceNotMet, os.str());
      }
    }
  }
  return out;
}

double derivative_within(const std::function<double(double)>& fn, double t, Interval piece, double h) {
  const double left = t - piece.lo;
  const double right = piece.hi - t;
  if (left >= h && right >= h) return (fn(t + h) - fn(t - h)) / (2.0 * h);
  const double step = std::min(h, std::max(left, right) / 2.0);
  if (right >= left) return (-3.0 * fn(t) + 4.0 * fn(t + step) - fn(t + 2.0 * step)) / (2.0 * step);
  return (3.0 * fn(t) - 4.0 * fn(t - step) + fn(t - 2.0 * step)) / (2.0 * step);
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace

QuadratureResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    double rel_tol, std::size_t max_panels) {
  struct Panel {
    double a, b;
    QuadratureResult q;
    bool operator<(const Panel& o) const { return q.error < o.q.error; }
  };
  if (a == b) return {};
  std::priority_queue<Panel> panels;
  const QuadratureResult first = gauss_kronrod_15(f, a, b);
  panels.push({a, b, first});
  double total = first.value;
  double error = first.error;
  while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (panels.size() >= max_panels) {
      std::ostringstream os;
      os << "quadrature on [" << a << ", " << b << "] stuck at error " << error;
      throw Error(ErrorKind::ToleranceNotMet, os.str());
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left{worst.a, mid, gauss_kronrod_15(f, worst.a, mid)};
    const Panel right{mid, worst.b, gauss_kronrod_15(f, mid, worst.b)};
    total += left.q.value + right.q.value - worst.q.value;
    error += left.q.error + right.q.error - worst.q.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  double sum = 0.0;
  double err = 0.0;
  while (!panels.empty()) {
    sum += panels.top().q.value;
    err += panels.top().q.error;
    panels.pop();
  }
  return {sum, err};
}

}  // namespace roadwheel
