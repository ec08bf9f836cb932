#include "roadwheel/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>

#include "roadwheel/emit.hpp"
#include "roadwheel/errors.hpp"
#include "roadwheel/kinematics.hpp"
#include "roadwheel/road.hpp"
#include "roadwheel/validation.hpp"
#include "roadwheel/wheel.hpp"

namespace roadwheel {

namespace {

struct Options {
  std::string preset = "unit-circle";
  double k = 0.5;
  double d = 0.5;
  int sides = 4;
  double apothem = 1.0;
  int terms = 50;
  double a = 2.0;
  double b = 3.0;
  double level_offset = 3.0;
  double margin = kDefaultDomainMargin;
  std::optional<double> theta_min;
  std::optional<double> theta_max;
  std::optional<double> tol;
  std::string law = "canonical";
  std::vector<double> marks;
  std::vector<double> phis;
  int frames = 24;
  int copies = 4;
  int samples = 400;
  std::string csv;
  std::string svg;
  std::string out_dir = "frames";
  std::string plot;
  std::string road;
  std::string track;
  bool center_path = false;
  bool crashes = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, Interval>& default_ranges() {
  static const std::map<std::string, Interval> ranges{
      {"unit-circle", {0.0, 2.0 * kPi}},  {"line-secant", {-1.3, 1.3}},     {"regular-polygon", {-kPi, kPi}},
      {"poinsot-sech", {-8.0, 8.0}},      {"log-spiral", {-2.0, 2.0}},      {"offset-circle", {-1.37, 1.37}},
      {"focal-parabola", {-1.5, 1.5}},    {"weierstrass", {0.0, 2.0 * kPi}},
  };
  return ranges;
}

WheelPreset preset_of(const Options& o) {
  const std::string& p = o.preset;
  if (p == "unit-circle") return preset::UnitCircle{};
  if (p == "line-secant") return preset::LineSecant{};
  if (p == "regular-polygon") return preset::RegularPolygon{o.sides, o.apothem};
  if (p == "poinsot-sech") return preset::PoinsotSech{};
  if (p == "log-spiral") return preset::LogSpiral{o.k};
  if (p == "offset-circle") return preset::OffsetCircle{};
  if (p == "focal-parabola") return preset::FocalParabola{o.d};
  if (p == "weierstrass") return preset::Weierstrass{o.a, o.b, o.level_offset, o.terms, -1};
  throw UsageError("unknown preset '" + p + "'");
}

/// Range from flags, else the preset default clipped to the wheel domain.
Interval range_of(const Options& o, const WheelSpec& wheel, Interval fallback) {
  const Interval dom = wheel.domain();
  Interval r{std::max(fallback.lo, dom.lo), std::min(fallback.hi, dom.hi)};
  if (o.theta_min) r.lo = *o.theta_min;
  if (o.theta_max) r.hi = *o.theta_max;
  if (!(r.lo <= 0.0 && 0.0 <= r.hi) || !(r.hi > r.lo))
    throw UsageError("theta range must contain 0 and have theta-min < theta-max");
  return r;
}

struct InverseRoad {
  RoadFunction fn;
  Interval range;
};

InverseRoad inverse_road_of(const Options& o) {
  const double inf = std::numeric_limits<double>::infinity();
  if (o.road == "catenary") return {{[](double x) { return -std::cosh(x); }, {-inf, inf}, "catenary"}, {-1.2, 1.2}};
  if (o.road == "cosine")
    return {{[](double x) { return -std::cos(x); }, {-kPi / 2.0, kPi / 2.0}, "cosine"}, {-8.0, 8.0}};
  if (o.road == "tilted-line") {
    if (!(o.k > 0.0)) throw Error(ErrorKind::BadParameter, "tilted line needs k > 0");
    const double k = o.k;
    return {{[k](double x) { return -k * x - 1.0; }, {-1.0 / k, inf}, "tilted-line"}, {-2.0, 2.0}};
  }
  if (o.road == "parabola") {
    if (!(o.d > 0.0)) throw Error(ErrorKind::BadParameter, "parabola needs d > 0");
    const double d = o.d;
    return {{[d](double x) { return -x * x / (2.0 * d) - d / 2.0; }, {-inf, inf}, "parabola"}, {-1.5, 1.5}};
  }
  if (o.road == "circle")
    return {{[](double x) { return -std::sqrt(std::max(0.0, 4.0 - x * x)); }, {-2.0, 2.0}, "circle"},
            {-1.37, 1.37}};
  throw UsageError("unknown road '" + o.road + "'");
}

struct Context {
  const Options& o;
  std::ostream& out;
  std::ostream& err;

  std::shared_ptr<const WheelSpec> wheel() const {
    return std::make_shared<const WheelSpec>(make_wheel(preset_of(o), o.margin));
  }
  Interval fallback() const {
    const auto it = default_ranges().find(o.preset);
    return it == default_ranges().end() ? Interval{-1.0, 1.0} : it->second;
  }
  RollScene scene() const {
    const auto w = wheel();
    return RollScene(w, range_of(o, *w, fallback()));
  }
  RenderJob job() const {
    RenderJob j;
    j.samples_per_curve = o.samples;
    j.traces = o.marks;
    j.center_path = o.center_path;
    j.crashes = o.crashes;
    return j;
  }
};

template <class Curve>
void emit_csv(const Context& c, const Curve& curve) {
  if (c.o.csv.empty()) {
    c.out << to_csv(curve);
  } else {
    export_csv(curve, c.o.csv);
  }
}

int cmd_road(const Context& c) {
  const RollScene scene = c.scene();
  emit_csv(c, scene.road());
  if (!c.o.svg.empty()) {
    RenderJob j = c.job();
    render_svg(j, &scene, c.o.svg);
  }
  return kExitOk;
}

int cmd_wheel(const Context& c) {
  std::shared_ptr<const WheelSpec> wheel;
  std::optional<RoadCurve> road;
  if (c.o.road.empty()) {
    wheel = c.wheel();
  } else {
    const InverseRoad inv = inverse_road_of(c.o);
    Interval r = inv.range;
    if (c.o.theta_min) r.lo = *c.o.theta_min;
    if (c.o.theta_max) r.hi = *c.o.theta_max;
    if (!(r.lo <= 0.0 && 0.0 <= r.hi) || !(r.hi > r.lo))
      throw UsageError("theta range must contain 0 and have theta-min < theta-max");
    InverseSolution sol = solve_inverse(inv.fn, r);
    wheel = sol.wheel;
    road.emplace(std::move(sol.road));
  }
  const Interval body = wheel->body();
  std::vector<Point2> samples;
  for (Angle t : linspace(body.lo, body.hi, static_cast<std::size_t>(std::max(c.o.samples, 16))))
    samples.push_back(wheel->point(t));
  emit_csv(c, std::span<const Point2>(samples));
  if (!c.o.svg.empty()) {
    RenderJob j = c.job();
    j.road = road.has_value();
    j.extra.push_back({samples, "wheel"});
    if (road) {
      const RollScene scene(*road);
      render_svg(j, &scene, c.o.svg);
    } else {
      render_svg(j, nullptr, c.o.svg);
    }
  }
  return kExitOk;
}

int cmd_trace(const Context& c) {
  if (c.o.marks.size() > 1) throw UsageError("trace takes a single --mark");
  const Angle mark = c.o.marks.empty() ? 0.0 : c.o.marks.front();
  const RollScene scene = c.scene();
  const TracePath path = trace_point(scene, mark, default_phi_grid(scene));
  emit_csv(c, path);
  if (!c.o.svg.empty()) {
    RenderJob j = c.job();
    j.traces = {mark};
    j.wheel_at_phi = {0.0};
    render_svg(j, &scene, c.o.svg);
  }
  return kExitOk;
}

int cmd_validate(const Context& c) {
  if (c.o.law == "section4") {
    const double tol = c.o.tol.value_or(1e-9);
    const DoubledSpinReport r = run_section4_counterexample(tol);
    for (const auto& line : report_lines(r, tol)) c.out << line << '\n';
    return r.arc_length_equal && !r.slipping ? kExitOk : kExitValidation;
  }
  if (c.o.law != "canonical") throw UsageError("unknown law '" + c.o.law + "'");
  const RollScene scene = c.scene();
  const RollingLaw law = canonical_law(scene);
  const auto grid = linspace(scene.road().theta_span().lo, scene.road().theta_span().hi, 500);
  const double tol = c.o.tol.value_or(default_noslip_tolerance(scene.wheel()));
  const NoSlipReport slip = noslip_report(scene.wheel(), law, grid, tol);
  bool ok = slip.no_slip;
  for (const auto& line : report_lines(slip, "noslip_residual")) c.out << line << '\n';
  const CorollaryReport cor = verify_corollaries(scene, grid);
  for (const auto& line : report_lines(cor)) c.out << line << '\n';
  ok = ok && cor.passed();
  return ok ? kExitOk : kExitValidation;
}

int cmd_crashes(const Context& c) {
  const RollScene scene = c.scene();
  const auto phis = default_phi_grid(scene);
  const auto events = detect_crashes(scene, phis, default_theta_grid(scene.wheel()), c.o.tol.value_or(kDefaultCrashTol));
  c.out << "crash_events " << events.size() << '\n';
  c.out << "crash_fraction " << format_number(crash_fraction(events, phis)) << '\n';
  if (!c.o.csv.empty() && !events.empty()) export_csv(std::span<const CrashEvent>(events), c.o.csv);
  if (!c.o.svg.empty()) {
    RenderJob j = c.job();
    j.crashes = true;
    render_svg(j, &scene, c.o.svg);
  }
  return kExitOk;
}

int cmd_render(const Context& c) {
  if (c.o.svg.empty()) throw UsageError("render needs --svg");
  RenderJob j = c.job();
  if (c.o.plot == "theta-x") {
    const RollScene scene = c.scene();
    const auto curve = theta_x_curve(scene.road());
    if (!c.o.csv.empty()) export_csv(std::span<const Point2>(curve), c.o.csv, "theta,x");
    j.extra.push_back({curve, "road"});
    render_svg(j, nullptr, c.o.svg);
    return kExitOk;
  }
  if (!c.o.plot.empty()) throw UsageError("unknown plot '" + c.o.plot + "'");
  if (c.o.copies < 1) throw UsageError("--copies must be >= 1");
  if (c.o.track == "sawtooth") {
    j.extra.push_back({sawtooth_track(c.o.copies), "road"});
    render_svg(j, nullptr, c.o.svg);
    return kExitOk;
  }
  const RollScene scene = c.scene();
  j.wheel_at_phi = c.o.phis.empty() ? std::vector<Angle>{0.0} : c.o.phis;
  if (c.o.track == "catenary") {
    j.road = false;
    j.extra.push_back({catenary_track(c.o.copies), "road"});
  } else if (!c.o.track.empty()) {
    throw UsageError("unknown track '" + c.o.track + "'");
  }
  render_svg(j, &scene, c.o.svg);
  return kExitOk;
}

int cmd_animate(const Context& c) {
  const RollScene scene = c.scene();
  const auto files = animate(c.job(), scene, c.o.frames, c.o.out_dir);
  for (const auto& f : files) c.out << f.string() << '\n';
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain:
    case ErrorKind::OutOfRange:
    case ErrorKind::BadParameter:
    case ErrorKind::IoError:
      return kExitUsage;
    case ErrorKind::NonPositiveRadius:
    case ErrorKind::ToleranceNotMet:
    case ErrorKind::RoadAboveAxis:
    case ErrorKind::RangeExceeded:
    case ErrorKind::NotRectifiableHere:
      return kExitNumeric;
  }
  return kExitNumeric;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Roads and wheels: solve, validate and draw rolling pairs", "roadwheel"};
  app.set_config("--config", "", "key = value file; flags given on the command line win");
  app.require_subcommand(1, 1);

  app.add_option("--preset", o.preset, "wheel preset")
      ->check(CLI::IsMember({"unit-circle", "line-secant", "regular-polygon", "poinsot-sech", "log-spiral",
                             "offset-circle", "focal-parabola", "weierstrass"}));
  app.add_option("--k", o.k, "log spiral rate; slope of the tilted line");
  app.add_option("--d", o.d, "focal parabola parameter");
  app.add_option("--sides", o.sides, "regular polygon sides");
  app.add_option("--apothem", o.apothem, "regular polygon apothem");
  app.add_option("--terms", o.terms, "Weierstrass terms");
  app.add_option("--a", o.a, "Weierstrass amplitude base");
  app.add_option("--b", o.b, "Weierstrass frequency base");
  app.add_option("--level-offset", o.level_offset, "Weierstrass level offset");
  app.add_option("--margin", o.margin, "distance kept from open domain ends");
  app.add_option("--theta-min", o.theta_min, "lower end of the rolling range");
  app.add_option("--theta-max", o.theta_max, "upper end of the rolling range");
  app.add_option("--tol", o.tol, "tolerance of the command's check");
  app.add_option("--law", o.law, "rolling law to validate")->check(CLI::IsMember({"canonical", "section4"}));
  app.add_option("--mark", o.marks, "wheel angle of a traced point (repeatable)");
  app.add_option("--phi", o.phis, "rolling angle at which to draw the wheel (repeatable)");
  app.add_option("--frames", o.frames, "animation frame count");
  app.add_option("--copies", o.copies, "arches or teeth in a stitched track");
  app.add_option("--samples", o.samples, "samples per drawn curve");
  app.add_option("--csv", o.csv, "CSV output path (default: standard output)");
  app.add_option("--svg", o.svg, "SVG output path");
  app.add_option("--out-dir", o.out_dir, "animation frame directory");
  app.add_option("--plot", o.plot, "alternative plot")->check(CLI::IsMember({"theta-x"}));
  app.add_option("--road", o.road, "solve the wheel for a road instead")
      ->check(CLI::IsMember({"catenary", "cosine", "tilted-line", "parabola", "circle"}));
  app.add_option("--track", o.track, "stitched track")->check(CLI::IsMember({"catenary", "sawtooth"}));
  app.add_flag("--center-path", o.center_path, "draw the path of the wheel center");
  app.add_flag("--crashes", o.crashes, "mark wheel points below the road");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"road", "solve the road of a wheel and write theta,x,y"},
      {"wheel", "sample a wheel, or solve one for --road"},
      {"trace", "path of a marked wheel point"},
      {"validate", "check the no-slip condition and its consequences"},
      {"crashes", "detect the rolled wheel dipping below its road"},
      {"render", "draw a scene as SVG"},
      {"animate", "write SVG frames of the rolling motion"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Context c{o, out, err};
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "road") return cmd_road(c);
    if (cmd == "wheel") return cmd_wheel(c);
    if (cmd == "trace") return cmd_trace(c);
    if (cmd == "validate") return cmd_validate(c);
    if (cmd == "crashes") return cmd_crashes(c);
    if (cmd == "render") return cmd_render(c);
    if (cmd == "animate") return cmd_animate(c);
    err << "unknown command " << cmd << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "roadwheel: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "roadwheel: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "roadwheel: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace roadwheel
