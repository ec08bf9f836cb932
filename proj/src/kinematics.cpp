#include "roadwheel/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "roadwheel/errors.hpp"

namespace roadwheel {

RollScene::RollScene(std::shared_ptr<const WheelSpec> wheel, Interval range, const SolverConfig& cfg)
    : road_(solve_forward(std::move(wheel), range, cfg)), range_(range) {}

RollScene::RollScene(const WheelSpec& wheel, Interval range, const SolverConfig& cfg)
    : RollScene(std::make_shared<const WheelSpec>(wheel), range, cfg) {}

RollScene::RollScene(RoadCurve road) : road_(std::move(road)), range_(road_.theta_span()) {}

Point2 contact_point(const RollScene& scene, Angle theta) { return scene.road().point_at(theta); }

RigidPose rolled_pose(const RollScene& scene, Angle phi) { return {phi, scene.road().x_at(phi)}; }

TracePath trace_point(const RollScene& scene, Angle mark, std::span<const Angle> phis) {
  const Point2 p = scene.wheel().point(mark);
  TracePath path;
  path.mark = mark;
  path.phis.assign(phis.begin(), phis.end());
  path.points.reserve(phis.size());
  for (Angle phi : phis) path.points.push_back(pose_apply(rolled_pose(scene, phi), p));
  return path;
}

std::vector<Point2> rolled_wheel_samples(const RollScene& scene, Angle phi, std::span<const Angle> thetas) {
  const RigidPose pose = rolled_pose(scene, phi);
  std::vector<Point2> out;
  out.reserve(thetas.size());
  for (Angle t : thetas) out.push_back(pose_apply(pose, scene.wheel().point(t)));
  return out;
}

std::vector<Point2> center_path(const RollScene& scene) {
  std::vector<Point2> out;
  const auto& ts = scene.road().thetas();
  out.reserve(ts.size());
  for (Angle t : ts) out.push_back(pose_apply(rolled_pose(scene, t), {0.0, 0.0}));
  return out;
}

std::vector<CrashEvent> detect_crashes(const RollScene& scene, std::span<const Angle> phis,
                                       std::span<const Angle> thetas, double crash_tol) {
  if (!(crash_tol > 0.0)) throw Error(ErrorKind::BadParameter, "crash_tol must be > 0");
  const RoadCurve& road = scene.road();
  const Interval xr = road.x_span();
  std::vector<Point2> body;
  body.reserve(thetas.size());
  for (Angle t : thetas) body.push_back(scene.wheel().point(t));

  std::vector<CrashEvent> events;
  for (Angle phi : phis) {
    const RigidPose pose = rolled_pose(scene, phi);
    const std::size_t first = events.size();
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Point2 p = pose_apply(pose, body[i]);
      // Points above the axis can never be under a road that stays below it.
      if (p.y >= 0.0 || !xr.contains(p.x)) continue;
      const double depth = road_height(road, p.x) - p.y;
      if (depth > crash_tol) events.push_back({phi, thetas[i], depth});
    }
    std::sort(events.begin() + static_cast<std::ptrdiff_t>(first), events.end(),
              [](const CrashEvent& a, const CrashEvent& b) { return a.depth > b.depth; });
  }
  std::stable_sort(events.begin(), events.end(), [](const CrashEvent& a, const CrashEvent& b) { return a.phi < b.phi; });
  return events;
}

double crash_fraction(std::span<const CrashEvent> events, std::span<const Angle> phis) {
  if (phis.empty()) return 0.0;
  std::vector<Angle> hit;
  for (const auto& e : events) {
    if (hit.empty() || hit.back() != e.phi) hit.push_back(e.phi);
  }
  std::sort(hit.begin(), hit.end());
  hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
  return static_cast<double>(hit.size()) / static_cast<double>(phis.size());
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {a};
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

std::vector<Angle> default_phi_grid(const RollScene& scene) {
  const Interval r = scene.range();
  const auto n = static_cast<std::size_t>(std::ceil(720.0 * r.width() / (2.0 * kPi))) + 1;
  return linspace(r.lo, r.hi, std::max<std::size_t>(n, 2));
}

std::vector<Angle> default_theta_grid(const WheelSpec& wheel) {
  const Interval b = wheel.body();
  return linspace(b.lo, b.hi, 2000);
}

}  // namespace roadwheel
