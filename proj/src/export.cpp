#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "glider/mission.hpp"
#include "json.hpp"

namespace glider {

using nlohmann::ordered_json;

namespace {

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  // avoid "-0.00"
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

ordered_json time_json(double t) {
  if (!std::isfinite(t)) return nullptr;
  return t;
}

void write_text(const std::string& path, const std::string& text, const char* what) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(std::string("cannot write ") + what + " '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error(std::string("write failed for ") + what + " '" + path + "'");
}

ordered_json path_totals(const PlannedPath& p) {
  return {{"travel_time_s", p.total_time},
          {"travel_time", format_duration(p.total_time)},
          {"path_length_m", p.total_length},
          {"waypoint_count", p.waypoints.size()}};
}

}  // namespace

std::string mission_summary(const MissionSpec& spec, const MissionResult& r) {
  std::ostringstream os;
  const bool ok = r.status == MissionStatus::ok;
  os << "status: " << (ok ? "ok" : "infeasible") << "\n";
  os << "mission: " << spec.name << "\n";
  if (!r.message.empty()) os << "message: " << r.message << "\n";
  os << "graph_vertices: " << r.graph_vertices << "\n";
  os << "graph_edges: " << r.graph_edges << "\n";
  if (ok) {
    os << "travel_time_unsmoothed: " << format_duration(r.planned.total_time) << "\n";
    os << "travel_time_smoothed: " << format_duration(r.smoothed.total_time) << "\n";
  } else {
    os << "travel_time_unsmoothed: impassable\n";
    os << "travel_time_smoothed: impassable\n";
  }
  os << "travel_time_straight_line: " << format_duration(r.straight_line.time) << "\n";
  os << "travel_time_straight_line_no_current: " << format_duration(r.straight_line_no_current)
     << "\n";
  if (ok) {
    os << "path_length_unsmoothed_km: " << fixed(r.planned.total_length / 1000.0, 2) << "\n";
    os << "path_length_smoothed_km: " << fixed(r.smoothed.total_length / 1000.0, 2) << "\n";
  }
  os << "path_length_straight_line_km: " << fixed(r.straight_line_length / 1000.0, 2) << "\n";
  if (ok) {
    os << "waypoints_unsmoothed: " << r.planned.waypoints.size() << "\n";
    os << "waypoints_smoothed: " << r.smoothed.waypoints.size() << "\n";
    os << "smoothing_iterations: " << r.trace.iterations << "\n";
  }
  os << "fifo_violations: " << r.fifo_violations << "\n";
  for (const auto& w : spec.warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::string waypoints_document(const MissionSpec& spec, const MissionResult& r) {
  ordered_json doc;
  doc["version"] = 1;
  doc["status"] = r.status == MissionStatus::ok ? "ok" : "infeasible";
  doc["mission"] = ordered_json::parse(mission_echo(spec, -1));

  const PlannedPath& path = r.smoothed;
  ordered_json records = ordered_json::array();
  if (r.status == MissionStatus::ok) {
    for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
      const Vec2& p = path.waypoints[i];
      ordered_json rec;
      rec["index"] = i;
      rec["x"] = p.x;
      rec["y"] = p.y;
      if (spec.projection_origin) {
        const GeoPoint g = unproject(p, *spec.projection_origin);
        rec["lat"] = g.lat;
        rec["lon"] = g.lon;
      } else {
        rec["lat"] = nullptr;
        rec["lon"] = nullptr;
      }
      rec["arrival_time_s"] = time_json(path.arrival_times[i]);
      rec["arrival_time"] = format_duration(path.arrival_times[i] - path.arrival_times.front());
      if (i == 0) {
        rec["profile"] = nullptr;
      } else {
        rec["profile"] = {{"z_climb_to", path.profiles[i - 1].z_climb_to},
                          {"z_dive_to", path.profiles[i - 1].z_dive_to}};
      }
      records.push_back(std::move(rec));
    }
  }
  doc["waypoints"] = std::move(records);

  ordered_json totals;
  if (r.status == MissionStatus::ok) {
    totals["smoothed"] = path_totals(r.smoothed);
    totals["unsmoothed"] = path_totals(r.planned);
  }
  totals["straight_line"] = {
      {"status", is_feasible(r.straight_line.time) ? "ok" : "impassable"},
      {"travel_time_s", time_json(r.straight_line.time)},
      {"travel_time", format_duration(r.straight_line.time)},
      {"path_length_m", r.straight_line_length}};
  totals["straight_line_no_current"] = {
      {"travel_time_s", r.straight_line_no_current},
      {"travel_time", format_duration(r.straight_line_no_current)}};
  doc["totals"] = std::move(totals);

  ordered_json smoothing;
  smoothing["applied"] = r.smoothing_applied;
  smoothing["iterations"] = r.trace.iterations;
  smoothing["merges_accepted"] = r.trace.merges_accepted;
  smoothing["merges_rejected_infeasible"] = r.trace.merges_rejected_infeasible;
  smoothing["merges_rejected_slower_local"] = r.trace.merges_rejected_slower_local;
  smoothing["merges_rejected_slower_goal"] = r.trace.merges_rejected_slower_goal;
  smoothing["goal_arrival_literal_s"] = time_json(r.trace.goal_arrival_literal);
  smoothing["goal_arrival_replayed_s"] = time_json(r.trace.goal_arrival_replayed);
  doc["smoothing"] = std::move(smoothing);

  ordered_json report = ordered_json::array();
  for (const auto& leg : r.report) {
    report.push_back({{"leg", leg.leg},
                      {"depth", leg.depth},
                      {"depart_time_s", leg.depart_time},
                      {"current_magnitude", leg.current_magnitude},
                      {"psi_deg", leg.psi_deg},
                      {"zero_current", leg.zero_current},
                      {"follow_current", leg.follow_current},
                      {"sample_failed", leg.sample_failed}});
  }
  doc["report"] = std::move(report);
  return doc.dump(2) + "\n";
}

void export_waypoints(const MissionSpec& spec, const MissionResult& result, const std::string& path) {
  write_text(path, waypoints_document(spec, result), "waypoint file");
}

std::string render_svg(const MissionSpec& spec, const MissionResult& r, const FlowGrid& grid,
                       const SvgOptions& opt) {
  const Region region = spec.region.value_or(
      Region{grid.x().front(), grid.y().front(), grid.x().back(), grid.y().back()});
  const double w_m = std::max(region.width(), 1e-9);
  const double h_m = std::max(region.height(), 1e-9);
  const double scale = opt.width_px / std::max(w_m, h_m);
  const double width = w_m * scale;
  const double height = h_m * scale;
  auto px = [&](const Vec2& p) { return Vec2{(p.x - region.x_min) * scale, (region.y_max - p.y) * scale}; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(width, 0)
     << "\" height=\"" << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 2) << " "
     << fixed(height, 2) << "\">\n";
  os << "<!-- version: 1; mission: " << spec.name << "; currents at depth " << fixed(opt.depth, 1)
     << " m, t = " << fixed(opt.time, 0) << " s -->\n";
  os << "<rect class=\"region\" x=\"0\" y=\"0\" width=\"" << fixed(width, 2) << "\" height=\""
     << fixed(height, 2) << "\" fill=\"#eef5fb\" stroke=\"#333\"/>\n";

  // land nodes
  os << "<g class=\"land\" fill=\"#b59b6d\">\n";
  const double dx = grid.nx() > 1 ? (grid.x().back() - grid.x().front()) / (grid.nx() - 1) : w_m;
  const double dy = grid.ny() > 1 ? (grid.y().back() - grid.y().front()) / (grid.ny() - 1) : h_m;
  for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
    for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
      if (!grid.is_land(iy, ix)) continue;
      const Vec2 c{grid.x()[ix], grid.y()[iy]};
      if (!region.contains(c)) continue;
      const Vec2 tl = px({c.x - dx / 2, c.y + dy / 2});
      os << "<rect x=\"" << fixed(tl.x, 2) << "\" y=\"" << fixed(tl.y, 2) << "\" width=\""
         << fixed(dx * scale, 2) << "\" height=\"" << fixed(dy * scale, 2) << "\"/>\n";
    }
  }
  os << "</g>\n";

  os << "<g class=\"restricted\" fill=\"#d9534f\" fill-opacity=\"0.35\" stroke=\"#d9534f\">\n";
  for (const auto& poly : spec.restricted_areas) {
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
      const Vec2 p = px(poly.vertices[i]);
      os << (i ? " " : "") << fixed(p.x, 2) << "," << fixed(p.y, 2);
    }
    os << "\"/>\n";
  }
  os << "</g>\n";

  // current arrows
  const int n = std::max(2, opt.arrows_per_side);
  std::vector<SamplePoint> pts;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      pts.push_back({region.x_min + w_m * (i + 0.5) / n, region.y_min + h_m * (j + 0.5) / n,
                     opt.depth, opt.time});
    }
  }
  const auto samples = sample_batch(grid, pts, spec.scheme);
  double max_mag = 0.0;
  for (const auto& s : samples) {
    if (s.ok()) max_mag = std::max(max_mag, s.current.magnitude());
  }
  os << "<g class=\"currents\" stroke=\"#1f77b4\" stroke-width=\"1\">\n";
  if (max_mag > 0.0) {
    const double cell_px = std::min(width, height) / n;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const auto& s = samples[k];
      if (!s.ok()) continue;
      const double mag = s.current.magnitude();
      if (mag == 0.0) continue;
      const double len = 0.9 * cell_px * mag / max_mag;
      const Vec2 a = px({pts[k].x, pts[k].y});
      const Vec2 d{s.current.u / mag, -s.current.v / mag};
      const Vec2 b = a + d * len;
      const Vec2 l = b - Vec2{d.x * 0.866 - d.y * 0.5, d.y * 0.866 + d.x * 0.5} * (0.3 * len);
      const Vec2 rr = b - Vec2{d.x * 0.866 + d.y * 0.5, d.y * 0.866 - d.x * 0.5} * (0.3 * len);
      os << "<path d=\"M" << fixed(a.x, 2) << "," << fixed(a.y, 2) << " L" << fixed(b.x, 2) << ","
         << fixed(b.y, 2) << " M" << fixed(l.x, 2) << "," << fixed(l.y, 2) << " L" << fixed(b.x, 2)
         << "," << fixed(b.y, 2) << " L" << fixed(rr.x, 2) << "," << fixed(rr.y, 2) << "\"/>\n";
    }
  }
  os << "</g>\n";

  auto polyline = [&](const PlannedPath& p, const char* cls, const char* color, const char* dash) {
    os << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\"" << dash << " points=\"";
    for (std::size_t i = 0; i < p.waypoints.size(); ++i) {
      const Vec2 q = px(p.waypoints[i]);
      os << (i ? " " : "") << fixed(q.x, 2) << "," << fixed(q.y, 2);
    }
    os << "\"/>\n";
  };
  if (r.status == MissionStatus::ok) {
    const bool same = r.planned.waypoints == r.smoothed.waypoints;
    if (!same) polyline(r.planned, "unsmoothed", "#ff7f0e", " stroke-dasharray=\"6,4\"");
    polyline(r.smoothed, "smoothed", "#2ca02c", "");
  }

  const Vec2 s = px(spec.start);
  const Vec2 g = px(spec.goal);
  os << "<circle class=\"start\" cx=\"" << fixed(s.x, 2) << "\" cy=\"" << fixed(s.y, 2)
     << "\" r=\"6\" fill=\"#2ca02c\"/>\n";
  os << "<circle class=\"goal\" cx=\"" << fixed(g.x, 2) << "\" cy=\"" << fixed(g.y, 2)
     << "\" r=\"6\" fill=\"#d62728\"/>\n";
  os << "</svg>\n";
  return os.str();
}

void write_svg(const MissionSpec& spec, const MissionResult& result, const FlowGrid& grid,
               const SvgOptions& options, const std::string& path) {
  write_text(path, render_svg(spec, result, grid, options), "SVG file");
}

}  // namespace glider
