// Mission configuration, coordinate projection, plan -> smooth -> report
// orchestration, and waypoint/SVG export.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glider/flowfield.hpp"
#include "glider/kinematics.hpp"
#include "glider/search.hpp"
#include "glider/smoothing.hpp"

namespace glider {

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
};

inline constexpr double kEarthRadius = 6'371'000.0;  // m

/// Local equirectangular projection about `origin`.  |lat| must stay below 89.
Vec2 project(const GeoPoint& geo, const GeoPoint& origin);
GeoPoint unproject(const Vec2& xy, const GeoPoint& origin);

/// "d:hh:mm:ss" with whole seconds truncated (a microsecond of slack absorbs
/// floating-point noise); days are at least two digits.  Infeasible times
/// format as "impassable".
std::string format_duration(double seconds);

struct MissionSpec {
  std::string name = "mission";
  std::string flow_file;  // resolved against the mission file's directory
  Vec2 start;
  Vec2 goal;
  std::optional<GeoPoint> start_geo;
  std::optional<GeoPoint> goal_geo;
  double start_time = 0.0;
  std::optional<Region> region;  // default: flow grid bounding box
  VehicleSpec vehicle;
  std::optional<ProfileFamilySpec> profile_family;  // default: one full-depth profile
  InterpScheme scheme;
  double h = 0.25;
  int n_sub = 4;
  std::optional<double> grid_spacing;  // default: longer region side / 32
  int neighbor_set = 16;
  std::optional<std::size_t> terminal_links;  // default: neighbor_set
  std::vector<Polygon> restricted_areas;
  std::optional<GeoPoint> projection_origin;
  CostMode cost_mode = CostMode::fastest;
  double slack_factor = 1.1;
  std::vector<double> report_depths;  // default: profile family z_min and z_max
  std::vector<std::string> warnings;

  /// Fills defaults that depend on the flow grid and checks every invariant.
  /// Throws ConfigError naming the offending field.
  void resolve(const FlowGrid& grid);

  // Accessors valid after resolve().
  const Region& resolved_region() const { return *region; }
  const ProfileFamilySpec& resolved_profiles() const { return *profile_family; }
  double resolved_spacing() const { return *grid_spacing; }
  std::size_t resolved_links() const { return *terminal_links; }
};

/// Reads a mission file, loads its flow file for validation, and returns the
/// resolved spec.
MissionSpec parse_mission(const std::string& path);
/// Parses mission JSON text; `base_dir` resolves a relative flow_file.
MissionSpec parse_mission_text(std::string_view text, const std::string& base_dir);

/// Resolved configuration as JSON text (defaults included).
std::string mission_echo(const MissionSpec& spec, int indent = 2);

enum class MissionStatus { ok, infeasible };

struct MissionResult {
  MissionStatus status = MissionStatus::ok;
  std::string message;
  PlannedPath planned;
  PlannedPath smoothed;
  SmoothingTrace trace;
  bool smoothing_applied = true;
  ProfileChoice straight_line;
  double straight_line_length = 0.0;
  double straight_line_no_current = 0.0;
  std::vector<LegReport> report;
  std::size_t graph_vertices = 0;
  std::size_t graph_edges = 0;
  std::size_t fifo_violations = 0;
};

struct RunOptions {
  bool smooth = true;
  Execution execution = Execution::parallel;
};

MissionResult run_mission(const MissionSpec& spec, const FlowGrid& grid,
                          const RunOptions& options = {});
MissionResult run_mission(const MissionSpec& spec, const RunOptions& options = {});

/// Stable key: value summary (no timing figures).
std::string mission_summary(const MissionSpec& spec, const MissionResult& result);

std::string waypoints_document(const MissionSpec& spec, const MissionResult& result);
void export_waypoints(const MissionSpec& spec, const MissionResult& result,
                      const std::string& path);

struct SvgOptions {
  double depth = 0.0;
  double time = 0.0;
  int width_px = 800;
  int arrows_per_side = 20;
};

std::string render_svg(const MissionSpec& spec, const MissionResult& result, const FlowGrid& grid,
                       const SvgOptions& options);
void write_svg(const MissionSpec& spec, const MissionResult& result, const FlowGrid& grid,
               const SvgOptions& options, const std::string& path);

}  // namespace glider
