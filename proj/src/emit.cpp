#include "roadwheel/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "roadwheel/errors.hpp"

namespace roadwheel {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write to " + path.string() + " failed");
}

void require_rows(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadParameter, "cannot export an empty curve");
}

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const RoadCurve& road) {
  require_rows(road.size());
  std::string out = "theta,x,y\n";
  for (std::size_t i = 0; i < road.size(); ++i) append_row(out, {road.thetas()[i], road.xs()[i], road.ys()[i]});
  return out;
}

std::string to_csv(const TracePath& trace) {
  require_rows(trace.points.size());
  if (trace.phis.size() != trace.points.size()) throw Error(ErrorKind::BadParameter, "trace phis/points mismatch");
  std::string out = "phi,px,py\n";
  for (std::size_t i = 0; i < trace.points.size(); ++i)
    append_row(out, {trace.phis[i], trace.points[i].x, trace.points[i].y});
  return out;
}

std::string to_csv(std::span<const Point2> points, const std::string& header) {
  require_rows(points.size());
  std::string out = header + "\n";
  for (const Point2& p : points) append_row(out, {p.x, p.y});
  return out;
}

std::string to_csv(std::span<const CrashEvent> events) {
  require_rows(events.size());
  std::string out = "phi,theta,depth\n";
  for (const CrashEvent& e : events) append_row(out, {e.phi, e.theta_pen, e.depth});
  return out;
}

void export_csv(std::span<const CrashEvent> events, const std::filesystem::path& path) {
  write_file(path, to_csv(events));
}
void export_csv(const RoadCurve& road, const std::filesystem::path& path) { write_file(path, to_csv(road)); }
void export_csv(const TracePath& trace, const std::filesystem::path& path) { write_file(path, to_csv(trace)); }
void export_csv(std::span<const Point2> points, const std::filesystem::path& path, const std::string& header) {
  write_file(path, to_csv(points, header));
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::IoError, "csv has no header");
  {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double v = 0.0;
      const auto res = std::from_chars(p, comma, v);
      if (res.ec != std::errc() || res.ptr != comma) throw Error(ErrorKind::IoError, "bad csv number: " + line);
      row.push_back(v);
      p = comma + 1;
    }
    if (row.size() != table.header.size()) throw Error(ErrorKind::IoError, "csv row width mismatch: " + line);
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

void RenderJob::validate() const {
  if (samples_per_curve < 16) throw Error(ErrorKind::BadParameter, "samples_per_curve must be >= 16");
  if (!(stroke_width > 0.0) || !std::isfinite(stroke_width))
    throw Error(ErrorKind::BadParameter, "stroke width must be > 0");
  if (viewport) {
    const Viewport& v = *viewport;
    if (!(v.xmax > v.xmin) || !(v.ymax > v.ymin) || !std::isfinite(v.xmax - v.xmin) ||
        !std::isfinite(v.ymax - v.ymin))
      throw Error(ErrorKind::BadParameter, "viewport is degenerate");
  }
}

namespace {

struct Marker {
  Point2 at;
  std::string css_class = "crash";
};

struct Layers {
  std::vector<Polyline> lines;
  std::vector<Marker> markers;
};

constexpr std::size_t kMaxMarkers = 500;

Layers collect(const RenderJob& job, const RollScene* scene, std::optional<Angle> phi_cutoff) {
  Layers layers;
  if (scene) {
    const RoadCurve& road = scene->road();
    const Interval span = road.theta_span();
    if (job.road) {
      Polyline pl{{}, "road"};
      pl.points.reserve(road.size());
      for (std::size_t i = 0; i < road.size(); ++i) pl.points.push_back({road.xs()[i], road.ys()[i]});
      layers.lines.push_back(std::move(pl));
    }
    const Interval body = scene->wheel().body();
    const auto thetas = linspace(body.lo, body.hi, static_cast<std::size_t>(job.samples_per_curve));
    for (Angle phi : job.wheel_at_phi) {
      layers.lines.push_back({rolled_wheel_samples(*scene, phi, thetas), "wheel"});
      layers.lines.push_back({{pose_apply(rolled_pose(*scene, phi), {0.0, 0.0})}, "center"});
    }
    const double hi = phi_cutoff ? std::min(*phi_cutoff, span.hi) : span.hi;
    if (hi > span.lo) {
      const auto phis = linspace(span.lo, hi, static_cast<std::size_t>(job.samples_per_curve));
      for (Angle mark : job.traces) layers.lines.push_back({trace_point(*scene, mark, phis).points, "trace"});
      if (job.center_path) {
        Polyline pl{{}, "center-path"};
        for (Angle phi : phis) pl.points.push_back({scene->road().x_at(phi), 0.0});
        layers.lines.push_back(std::move(pl));
      }
    }
    if (job.crashes) {
      std::vector<Angle> phis = job.wheel_at_phi;
      if (phis.empty()) phis = default_phi_grid(*scene);
      const auto events = detect_crashes(*scene, phis, default_theta_grid(scene->wheel()));
      for (std::size_t i = 0; i < events.size() && i < kMaxMarkers; ++i) {
        const CrashEvent& e = events[i];
        layers.markers.push_back({pose_apply(rolled_pose(*scene, e.phi), scene->wheel().point(e.theta_pen))});
      }
    }
  }
  for (const Polyline& pl : job.extra) layers.lines.push_back(pl);
  // A marker-only center entry is drawn as a dot, not a polyline.
  for (auto it = layers.lines.begin(); it != layers.lines.end();) {
    if (it->css_class == "center") {
      layers.markers.push_back({it->points.front(), "center"});
      it = layers.lines.erase(it);
    } else {
      ++it;
    }
  }
  return layers;
}

Viewport bounds_of(const Layers& layers) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Viewport v{inf, -inf, inf, -inf};
  auto grow = [&v](Point2 p) {
    if (!is_finite(p)) return;
    v.xmin = std::min(v.xmin, p.x);
    v.xmax = std::max(v.xmax, p.x);
    v.ymin = std::min(v.ymin, p.y);
    v.ymax = std::max(v.ymax, p.y);
  };
  for (const auto& pl : layers.lines)
    for (Point2 p : pl.points) grow(p);
  for (const auto& m : layers.markers) grow(m.at);
  return v;
}

Viewport merge(Viewport a, const Viewport& b) {
  a.xmin = std::min(a.xmin, b.xmin);
  a.xmax = std::max(a.xmax, b.xmax);
  a.ymin = std::min(a.ymin, b.ymin);
  a.ymax = std::max(a.ymax, b.ymax);
  return a;
}

/// Bounding box plus 5% per side; the axis y = 0 is always in view.
Viewport padded(Viewport v) {
  if (!(v.xmax >= v.xmin)) v = {-1.0, 1.0, -1.0, 1.0};
  v.ymin = std::min(v.ymin, 0.0);
  v.ymax = std::max(v.ymax, 0.0);
  double w = v.xmax - v.xmin;
  double h = v.ymax - v.ymin;
  if (w <= 0.0) w = std::max(h, 1.0);
  if (h <= 0.0) h = std::max(w, 1.0);
  const double cx = 0.5 * (v.xmin + v.xmax);
  const double cy = 0.5 * (v.ymin + v.ymax);
  return {cx - 0.55 * w, cx + 0.55 * w, cy - 0.55 * h, cy + 0.55 * h};
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

constexpr double kPixelWidth = 960.0;

std::string draw(const Layers& layers, const Viewport& v, double stroke) {
  const double s = kPixelWidth / (v.xmax - v.xmin);
  const double height = s * (v.ymax - v.ymin);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kPixelWidth) + "\" height=\"" + num(height) +
         "\" viewBox=\"0 0 " + num(kPixelWidth) + " " + num(height) + "\">\n";
  out += "<style>polyline{fill:none;stroke-linejoin:round}"
         ".road{stroke:#333}.wheel{stroke:#1f5fbf}.trace{stroke:#c0392b}"
         ".center-path{stroke:#27ae60;stroke-dasharray:0.1 0.05}.extra{stroke:#8e44ad}"
         ".axis{stroke:#999}.crash{fill:#e67e22}.center{fill:#1f5fbf}</style>\n";
  out += "<g transform=\"translate(" + num(-v.xmin * s) + " " + num(v.ymax * s) + ") scale(" + num(s) + " " +
         num(-s) + ")\" stroke-width=\"" + num(stroke) + "\">\n";
  out += "<line class=\"axis\" x1=\"" + num(v.xmin) + "\" y1=\"0\" x2=\"" + num(v.xmax) + "\" y2=\"0\"/>\n";
  for (const auto& pl : layers.lines) {
    if (pl.points.empty()) continue;
    out += "<polyline class=\"" + pl.css_class + "\" points=\"";
    bool first = true;
    for (Point2 p : pl.points) {
      if (!is_finite(p)) continue;
      if (!first) out += ' ';
      out += num(p.x) + "," + num(p.y);
      first = false;
    }
    out += "\"/>\n";
  }
  const double r = 2.5 * stroke;
  for (const auto& m : layers.markers) {
    out += "<circle class=\"" + m.css_class + "\" cx=\"" + num(m.at.x) + "\" cy=\"" + num(m.at.y) + "\" r=\"" + num(r) + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace

std::string render_svg_string(const RenderJob& job, const RollScene* scene) {
  job.validate();
  const Layers layers = collect(job, scene, std::nullopt);
  const Viewport v = job.viewport ? *job.viewport : padded(bounds_of(layers));
  return draw(layers, v, job.stroke_width);
}

void render_svg(const RenderJob& job, const RollScene* scene, const std::filesystem::path& path) {
  write_file(path, render_svg_string(job, scene));
}

std::vector<Angle> animation_phis(const RollScene& scene, int phi_count) {
  if (phi_count < 2) throw Error(ErrorKind::BadParameter, "animation needs at least 2 frames");
  const Interval span = scene.road().theta_span();
  const Interval r = scene.range();
  return linspace(std::max(r.lo, span.lo), std::min(r.hi, span.hi), static_cast<std::size_t>(phi_count));
}

std::vector<std::filesystem::path> animate(const RenderJob& job, const RollScene& scene, int phi_count,
                                           const std::filesystem::path& dir) {
  job.validate();
  const auto phis = animation_phis(scene, phi_count);

  std::vector<Layers> frames;
  frames.reserve(phis.size());
  constexpr double inf = std::numeric_limits<double>::infinity();
  Viewport global{inf, -inf, inf, -inf};
  for (Angle phi : phis) {
    RenderJob frame = job;
    frame.wheel_at_phi = {phi};
    frames.push_back(collect(frame, &scene, phi));
    global = merge(global, bounds_of(frames.back()));
  }
  const Viewport v = job.viewport ? *job.viewport : padded(global);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.svg", i);
    written.push_back(dir / name);
    write_file(written.back(), draw(frames[i], v, job.stroke_width));
  }
  return written;
}

double catenary_arch_width() { return 2.0 * std::asinh(1.0); }

double sawtooth_tooth_length() { return std::sqrt(2.0) * (std::exp(kPi / 4.0) - 1.0); }

std::vector<Point2> stitched_track(const RoadCurve& road, Interval piece, double dx, int copies) {
  if (copies < 1) throw Error(ErrorKind::BadParameter, "track needs at least one copy");
  if (!road.theta_span().contains(piece)) throw Error(ErrorKind::OutOfRange, "track piece outside the road");
  std::vector<Point2> one;
  one.push_back(road.point_at(piece.lo));
  for (std::size_t i = 0; i < road.size(); ++i) {
    const double t = road.thetas()[i];
    if (t > piece.lo && t < piece.hi) one.push_back({road.xs()[i], road.ys()[i]});
  }
  one.push_back(road.point_at(piece.hi));
  std::vector<Point2> track;
  track.reserve(one.size() * static_cast<std::size_t>(copies));
  for (int c = 0; c < copies; ++c) {
    const double shift = static_cast<double>(c - (copies - 1) / 2) * dx;
    for (Point2 p : one) track.push_back({p.x + shift, p.y});
  }
  return track;
}

std::vector<Point2> catenary_track(int arches) {
  const Interval piece{-kPi / 4.0, kPi / 4.0};
  const RoadCurve road = solve_forward(make_wheel(preset::RegularPolygon{4, 1.0}), piece);
  return stitched_track(road, piece, catenary_arch_width(), arches);
}

std::vector<Point2> sawtooth_track(int teeth) {
  const Interval piece{0.0, kPi / 4.0};
  const RoadCurve road = solve_forward(make_wheel(preset::LogSpiral{1.0}), piece);
  // Each tooth is a straight stretch of length sawtooth_tooth_length() at 45 degrees.
  return stitched_track(road, piece, sawtooth_tooth_length() / std::sqrt(2.0), teeth);
}

std::vector<Point2> theta_x_curve(const RoadCurve& road) {
  std::vector<Point2> out;
  out.reserve(road.size());
  for (std::size_t i = 0; i < road.size(); ++i) out.push_back({road.thetas()[i], road.xs()[i]});
  return out;
}

}  // namespace roadwheel
