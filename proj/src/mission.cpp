#include "glider/mission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace glider {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

Vec2 project(const GeoPoint& geo, const GeoPoint& origin) {
  return {kEarthRadius * (geo.lon - origin.lon) * kDegToRad * std::cos(origin.lat * kDegToRad),
          kEarthRadius * (geo.lat - origin.lat) * kDegToRad};
}

GeoPoint unproject(const Vec2& xy, const GeoPoint& origin) {
  return {origin.lat + xy.y / (kEarthRadius * kDegToRad),
          origin.lon + xy.x / (kEarthRadius * kDegToRad * std::cos(origin.lat * kDegToRad))};
}

std::string format_duration(double seconds) {
  if (!std::isfinite(seconds)) return "impassable";
  const bool negative = seconds < 0.0;
  const auto total = static_cast<long long>(std::floor(std::abs(seconds) + 1e-6));
  const long long days = total / 86400;
  const long long hours = (total / 3600) % 24;
  const long long minutes = (total / 60) % 60;
  const long long secs = total % 60;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%02lld:%02lld:%02lld:%02lld", negative ? "-" : "", days,
                hours, minutes, secs);
  return buf;
}

namespace {

const std::set<std::string> kKnownKeys = {
    "version",      "name",           "flow_file",       "start",         "goal",
    "start_time",   "region",         "vehicle_speed",   "profiles",      "interpolation",
    "h",            "n_sub",          "grid_spacing",    "neighbor_set",  "terminal_links",
    "restricted_areas", "projection_origin", "cost_mode", "slack_factor", "report_depths"};

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("mission: '" + key + "' must be a number");
  return j.get<double>();
}

std::size_t count(const json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError("mission: '" + key + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

GeoPoint geo_point(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains("lat") || !j.contains("lon")) {
    throw ConfigError("mission: '" + key + "' must be {\"lat\": .., \"lon\": ..}");
  }
  return {number(j.at("lat"), key + ".lat"), number(j.at("lon"), key + ".lon")};
}

struct PointSpec {
  Vec2 xy;
  std::optional<GeoPoint> geo;
};

PointSpec point(const json& j, const std::string& key, const std::optional<GeoPoint>& origin) {
  if (j.is_array() && j.size() == 2) {
    return {{number(j[0], key), number(j[1], key)}, std::nullopt};
  }
  if (j.is_object() && j.contains("x") && j.contains("y")) {
    return {{number(j.at("x"), key + ".x"), number(j.at("y"), key + ".y")}, std::nullopt};
  }
  if (j.is_object() && j.contains("lat") && j.contains("lon")) {
    if (!origin) {
      throw ConfigError("mission: '" + key + "' is geographic but projection_origin is missing");
    }
    const GeoPoint g = geo_point(j, key);
    if (!(std::abs(g.lat) < 89.0)) throw ConfigError("mission: '" + key + "' latitude out of range");
    return {project(g, *origin), g};
  }
  throw ConfigError("mission: '" + key + "' must be {x, y}, {lat, lon} or [x, y]");
}

}  // namespace

MissionSpec parse_mission_text(std::string_view text, const std::string& base_dir) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ConfigError("mission: file is not a valid JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError("mission: unknown key '" + key + "'");
  }
  if (doc.contains("version") && doc.at("version") != 1) {
    throw ConfigError("mission: unsupported version (expected 1)");
  }
  for (const char* required : {"flow_file", "start", "goal"}) {
    if (!doc.contains(required)) {
      throw ConfigError(std::string("mission: missing required key '") + required + "'");
    }
  }

  MissionSpec spec;
  try {
    if (doc.contains("name")) spec.name = doc.at("name").get<std::string>();
    std::filesystem::path flow(doc.at("flow_file").get<std::string>());
    if (flow.is_relative() && !base_dir.empty()) flow = std::filesystem::path(base_dir) / flow;
    spec.flow_file = flow.lexically_normal().string();

    if (doc.contains("projection_origin")) {
      spec.projection_origin = geo_point(doc.at("projection_origin"), "projection_origin");
    }
    auto s = point(doc.at("start"), "start", spec.projection_origin);
    auto g = point(doc.at("goal"), "goal", spec.projection_origin);
    spec.start = s.xy;
    spec.start_geo = s.geo;
    spec.goal = g.xy;
    spec.goal_geo = g.geo;

    if (doc.contains("start_time")) spec.start_time = number(doc.at("start_time"), "start_time");
    if (doc.contains("region")) {
      const json& r = doc.at("region");
      for (const char* k : {"x_min", "y_min", "x_max", "y_max"}) {
        if (!r.contains(k)) throw ConfigError(std::string("mission: region.") + k + " missing");
      }
      spec.region = Region{number(r.at("x_min"), "region.x_min"), number(r.at("y_min"), "region.y_min"),
                           number(r.at("x_max"), "region.x_max"), number(r.at("y_max"), "region.y_max")};
    }
    if (doc.contains("vehicle_speed")) {
      spec.vehicle.speed_through_water = number(doc.at("vehicle_speed"), "vehicle_speed");
    }
    if (doc.contains("profiles")) {
      const json& p = doc.at("profiles");
      ProfileFamilySpec f;
      for (const auto& [key, value] : p.items()) {
        if (key == "z_min") f.z_min = number(value, "profiles.z_min");
        else if (key == "z_max") f.z_max = number(value, "profiles.z_max");
        else if (key == "z_climb_to_max") f.z_climb_to_max = number(value, "profiles.z_climb_to_max");
        else if (key == "z_min_range") f.z_min_range = number(value, "profiles.z_min_range");
        else if (key == "n_climb_to_levels") f.n_climb_to_levels = count(value, "profiles.n_climb_to_levels");
        else if (key == "n_dive_to_levels") f.n_dive_to_levels = count(value, "profiles.n_dive_to_levels");
        else throw ConfigError("mission: unknown key 'profiles." + key + "'");
      }
      for (const char* k : {"z_min", "z_max", "z_min_range"}) {
        if (!p.contains(k)) throw ConfigError(std::string("mission: profiles.") + k + " missing");
      }
      if (!p.contains("z_climb_to_max")) f.z_climb_to_max = f.z_min;
      spec.profile_family = f;
    }
    if (doc.contains("interpolation")) {
      const json& i = doc.at("interpolation");
      try {
        if (i.contains("xy")) spec.scheme.xy = parse_xy_method(i.at("xy").get<std::string>());
        if (i.contains("z")) spec.scheme.z = parse_axis_method(i.at("z").get<std::string>());
        if (i.contains("t")) spec.scheme.t = parse_axis_method(i.at("t").get<std::string>());
      } catch (const FlowError& e) {
        throw ConfigError(std::string("mission: interpolation: ") + e.what());
      }
    }
    if (doc.contains("h")) spec.h = number(doc.at("h"), "h");
    if (doc.contains("n_sub")) spec.n_sub = static_cast<int>(count(doc.at("n_sub"), "n_sub"));
    if (doc.contains("grid_spacing")) spec.grid_spacing = number(doc.at("grid_spacing"), "grid_spacing");
    if (doc.contains("neighbor_set")) {
      spec.neighbor_set = static_cast<int>(count(doc.at("neighbor_set"), "neighbor_set"));
    }
    if (doc.contains("terminal_links")) {
      spec.terminal_links = count(doc.at("terminal_links"), "terminal_links");
    }
    if (doc.contains("restricted_areas")) {
      const json& areas = doc.at("restricted_areas");
      if (!areas.is_array()) throw ConfigError("mission: 'restricted_areas' must be an array");
      for (std::size_t a = 0; a < areas.size(); ++a) {
        const std::string key = "restricted_areas[" + std::to_string(a) + "]";
        if (!areas[a].is_array() || areas[a].size() < 3) {
          throw ConfigError("mission: '" + key + "' must list at least 3 vertices");
        }
        Polygon poly;
        for (const auto& v : areas[a]) poly.vertices.push_back(point(v, key, spec.projection_origin).xy);
        spec.restricted_areas.push_back(std::move(poly));
      }
    }
    if (doc.contains("cost_mode")) spec.cost_mode = parse_cost_mode(doc.at("cost_mode").get<std::string>());
    if (doc.contains("slack_factor")) spec.slack_factor = number(doc.at("slack_factor"), "slack_factor");
    if (doc.contains("report_depths")) {
      for (const auto& d : doc.at("report_depths")) spec.report_depths.push_back(number(d, "report_depths"));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("mission: ") + e.what());
  }
  return spec;
}

void MissionSpec::resolve(const FlowGrid& grid) {
  auto fail = [](const std::string& msg) { throw ConfigError("mission: " + msg); };

  if (start == goal) fail("start and goal must differ");
  if (!(vehicle.speed_through_water > 0.0)) fail("vehicle_speed must be > 0");
  if (!(h > 0.0 && h <= 1.0)) fail("h must lie in (0, 1]");
  if (n_sub < 1) fail("n_sub must be >= 1");
  if (neighbor_set != 8 && neighbor_set != 16) fail("neighbor_set must be 8 or 16");
  if (!(slack_factor >= 1.0)) fail("slack_factor must be >= 1");
  if (!std::isfinite(start_time)) fail("start_time must be finite");

  if (start_time < grid.t().front()) {
    warnings.push_back("start_time " + std::to_string(start_time) +
                       " precedes the first flow time step; clamped to " +
                       std::to_string(grid.t().front()));
    start_time = grid.t().front();
  }

  const Region bbox{grid.x().front(), grid.y().front(), grid.x().back(), grid.y().back()};
  if (!region) region = bbox;
  if (!(region->x_max >= region->x_min && region->y_max >= region->y_min) ||
      (region->width() <= 0.0 && region->height() <= 0.0)) {
    fail("region is degenerate");
  }
  if (region->x_min < bbox.x_min || region->y_min < bbox.y_min || region->x_max > bbox.x_max ||
      region->y_max > bbox.y_max) {
    fail("region extends beyond the flow grid");
  }
  if (!region->contains(start)) fail("start lies outside the region");
  if (!region->contains(goal)) fail("goal lies outside the region");

  const double z_top = grid.z().front();
  const double z_bottom = grid.z().back();
  if (!profile_family) {
    ProfileFamilySpec f;
    f.z_min = std::max(0.0, z_top);
    f.z_max = grid.nz() > 1 ? z_bottom : f.z_min + 100.0;
    f.z_climb_to_max = f.z_min;
    f.z_min_range = f.z_max - f.z_min;
    profile_family = f;
  }
  try {
    profile_family->validate();
  } catch (const ConfigError& e) {
    fail(e.what());
  }
  // A single-level grid is depth-invariant, so any depth band samples it.
  if (grid.nz() > 1) {
    if (profile_family->z_max > z_bottom) {
      fail("z_max " + std::to_string(profile_family->z_max) +
           " exceeds the deepest flow level " + std::to_string(z_bottom));
    }
    if (profile_family->z_min < z_top) {
      fail("z_min " + std::to_string(profile_family->z_min) +
           " lies above the shallowest flow level " + std::to_string(z_top));
    }
  }
  try {
    (void)make_dive_profiles(*profile_family);
  } catch (const ConfigError& e) {
    fail(e.what());
  }

  if (!grid_spacing) grid_spacing = std::max(region->width(), region->height()) / 32.0;
  if (!(*grid_spacing > 0.0)) fail("grid_spacing must be > 0");
  if (!terminal_links) terminal_links = static_cast<std::size_t>(neighbor_set);
  if (*terminal_links < 1) fail("terminal_links must be >= 1");
  if (report_depths.empty()) {
    report_depths.push_back(profile_family->z_min);
    if (profile_family->z_max != profile_family->z_min) report_depths.push_back(profile_family->z_max);
  }
}

MissionSpec parse_mission(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mission file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path().string();
  MissionSpec spec = parse_mission_text(ss.str(), dir);
  const FlowGrid grid = load_flow_grid(spec.flow_file);
  spec.resolve(grid);
  return spec;
}

namespace {

ordered_json point_json(const Vec2& p) { return {{"x", p.x}, {"y", p.y}}; }

}  // namespace

std::string mission_echo(const MissionSpec& spec, int indent) {
  ordered_json j;
  j["version"] = 1;
  j["name"] = spec.name;
  j["flow_file"] = spec.flow_file;
  j["start"] = point_json(spec.start);
  j["goal"] = point_json(spec.goal);
  if (spec.projection_origin) {
    j["projection_origin"] = {{"lat", spec.projection_origin->lat}, {"lon", spec.projection_origin->lon}};
  }
  j["start_time"] = spec.start_time;
  if (spec.region) {
    j["region"] = {{"x_min", spec.region->x_min}, {"y_min", spec.region->y_min},
                   {"x_max", spec.region->x_max}, {"y_max", spec.region->y_max}};
  }
  j["vehicle_speed"] = spec.vehicle.speed_through_water;
  if (spec.profile_family) {
    const auto& f = *spec.profile_family;
    j["profiles"] = {{"z_min", f.z_min},
                     {"z_max", f.z_max},
                     {"z_climb_to_max", f.z_climb_to_max},
                     {"z_min_range", f.z_min_range},
                     {"n_climb_to_levels", f.n_climb_to_levels},
                     {"n_dive_to_levels", f.n_dive_to_levels}};
  }
  j["interpolation"] = {{"xy", to_string(spec.scheme.xy)},
                        {"z", to_string(spec.scheme.z)},
                        {"t", to_string(spec.scheme.t)}};
  j["h"] = spec.h;
  j["n_sub"] = spec.n_sub;
  if (spec.grid_spacing) j["grid_spacing"] = *spec.grid_spacing;
  j["neighbor_set"] = spec.neighbor_set;
  if (spec.terminal_links) j["terminal_links"] = *spec.terminal_links;
  ordered_json areas = ordered_json::array();
  for (const auto& poly : spec.restricted_areas) {
    ordered_json vs = ordered_json::array();
    for (const auto& v : poly.vertices) vs.push_back(point_json(v));
    areas.push_back(std::move(vs));
  }
  j["restricted_areas"] = std::move(areas);
  j["cost_mode"] = to_string(spec.cost_mode);
  j["slack_factor"] = spec.slack_factor;
  j["report_depths"] = spec.report_depths;
  return j.dump(indent);
}

MissionResult run_mission(const MissionSpec& spec, const FlowGrid& grid, const RunOptions& options) {
  MissionSpec resolved = spec;
  resolved.resolve(grid);

  const FlowField field{&grid, resolved.scheme};
  const auto profiles = make_dive_profiles(resolved.resolved_profiles());
  ProfileCostOptions cost_options;
  cost_options.h = resolved.h;
  cost_options.mode = resolved.cost_mode;
  cost_options.slack_factor = resolved.slack_factor;
  cost_options.n_sub = resolved.n_sub;
  cost_options.execution = options.execution;
  const EdgeCostFn cost = make_glider_cost(field, resolved.vehicle, profiles, cost_options);

  const Obstacles obstacles{&grid, resolved.restricted_areas};
  const double clear_step = resolved.resolved_spacing() / 4.0;
  // Legs created by smoothing are not graph edges; they must avoid obstacles too.
  const EdgeCostFn guarded = [&](const Vec2& a, const Vec2& b, double depart) {
    if (!obstacles.segment_clear(a, b, clear_step)) return EdgeCost{};
    return cost(a, b, depart);
  };

  MissionResult result;
  result.straight_line_length = distance(resolved.start, resolved.goal);
  result.straight_line_no_current = result.straight_line_length / resolved.vehicle.speed_through_water;
  if (obstacles.segment_clear(resolved.start, resolved.goal, clear_step)) {
    result.straight_line = optimal_profile_cost(resolved.start, resolved.goal, resolved.start_time,
                                                profiles, cost_options, field, resolved.vehicle);
  }

  SearchGraph graph = build_graph(resolved.resolved_region(), resolved.resolved_spacing(),
                                  resolved.neighbor_set, obstacles);
  const Terminals terms =
      connect_terminals(graph, resolved.start, resolved.goal, resolved.resolved_links());
  result.graph_vertices = graph.vertex_count();
  result.graph_edges = graph.edge_count();

  const SearchResult search = tve_dijkstra(graph, terms.start, terms.goal, resolved.start_time, cost);
  result.fifo_violations = search.fifo_violations;
  if (!search.path) {
    result.status = MissionStatus::infeasible;
    result.message = "goal unreachable: no passable route through the current field";
    return result;
  }
  result.planned = *search.path;

  if (options.smooth) {
    const auto smoothed = smooth_path(result.planned.waypoints, resolved.start_time, guarded);
    result.trace = smoothed.trace;
    result.smoothed = replay_path(smoothed.waypoints, resolved.start_time, guarded);
  } else {
    result.smoothing_applied = false;
    result.smoothed = result.planned;
    result.trace.goal_arrival_literal = result.planned.arrival_times.back();
    result.trace.goal_arrival_replayed = result.planned.arrival_times.back();
  }
  result.report = path_report(result.smoothed, field, resolved.vehicle, resolved.report_depths);
  if (result.fifo_violations > 0) {
    result.message = "warning: FIFO violation detected on planned legs; optimality not guaranteed";
  }
  return result;
}

MissionResult run_mission(const MissionSpec& spec, const RunOptions& options) {
  const FlowGrid grid = load_flow_grid(spec.flow_file);
  return run_mission(spec, grid, options);
}

}  // namespace glider
