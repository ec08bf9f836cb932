#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roadwheel/geom.hpp"
#include "roadwheel/kinematics.hpp"
#include "roadwheel/road.hpp"

namespace roadwheel {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

/// Header line, then one row per sample. Throws BadParameter on an empty
/// curve (nothing is created) and IoError when the file cannot be written.
void export_csv(const RoadCurve& road, const std::filesystem::path& path);     // theta,x,y
void export_csv(const TracePath& trace, const std::filesystem::path& path);    // phi,px,py
void export_csv(std::span<const Point2> points, const std::filesystem::path& path,
                const std::string& header = "x,y");

void export_csv(std::span<const CrashEvent> events, const std::filesystem::path& path);  // phi,theta,depth

std::string to_csv(const RoadCurve& road);
std::string to_csv(std::span<const CrashEvent> events);
std::string to_csv(const TracePath& trace);
std::string to_csv(std::span<const Point2> points, const std::string& header = "x,y");

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV written by export_csv. Throws IoError.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text);

struct Viewport {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;
};

struct Polyline {
  std::vector<Point2> points;
  std::string css_class = "extra";
};

struct RenderJob {
  bool road = true;
  std::vector<Angle> wheel_at_phi;
  std::vector<Angle> traces;
  bool center_path = false;
  bool crashes = false;
  std::optional<Viewport> viewport;
  double stroke_width = 0.02;
  int samples_per_curve = 400;
  /// Curves drawn as given: stitched tracks, relation plots.
  std::vector<Polyline> extra;

  /// Throws BadParameter: samples_per_curve < 16, degenerate viewport,
  /// stroke_width <= 0.
  void validate() const;
};

/// An SVG document. The scene may be null when the job only holds extra curves.
std::string render_svg_string(const RenderJob& job, const RollScene* scene);
void render_svg(const RenderJob& job, const RollScene* scene, const std::filesystem::path& path);

/// frame_0000.svg ... at phi_count equally spaced rolling angles across the
/// scene range, all sharing one viewBox. Throws BadParameter if phi_count < 2.
std::vector<std::filesystem::path> animate(const RenderJob& job, const RollScene& scene, int phi_count,
                                           const std::filesystem::path& dir);
std::vector<Angle> animation_phis(const RollScene& scene, int phi_count);

/// Width of one arch of the square wheel's road: 2 asinh(1).
double catenary_arch_width();
/// Length of one tooth of the spiral sawtooth road: sqrt(2) (e^{pi/4} - 1).
double sawtooth_tooth_length();

/// copies translated duplicates of the road over piece, offset by dx each.
/// Copy (copies - 1) / 2 is the original piece, left in place.
std::vector<Point2> stitched_track(const RoadCurve& road, Interval piece, double dx, int copies);
/// Square wheel road, arches of width catenary_arch_width().
std::vector<Point2> catenary_track(int arches);
/// Road of the log spiral (k = 1) over one quarter turn, repeated tooth by tooth.
std::vector<Point2> sawtooth_track(int teeth);

/// (theta, x(theta)) at every road sample.
std::vector<Point2> theta_x_curve(const RoadCurve& road);

}  // namespace roadwheel
