#include "glider/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <utility>

namespace glider {

bool Polygon::contains(const Vec2& p) const {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[j];
    // on-edge test
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (std::abs(cross) <= 1e-9 * std::max(1.0, distance(a, b)) &&
        p.x >= std::min(a.x, b.x) - 1e-9 && p.x <= std::max(a.x, b.x) + 1e-9 &&
        p.y >= std::min(a.y, b.y) - 1e-9 && p.y <= std::max(a.y, b.y) + 1e-9) {
      return true;
    }
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

namespace {

std::size_t nearest_node(const std::vector<double>& axis, double q) {
  auto it = std::lower_bound(axis.begin(), axis.end(), q);
  if (it == axis.begin()) return 0;
  if (it == axis.end()) return axis.size() - 1;
  const auto hi = static_cast<std::size_t>(it - axis.begin());
  return (q - axis[hi - 1] <= axis[hi] - q) ? hi - 1 : hi;
}

}  // namespace

bool Obstacles::blocked(const Vec2& p) const {
  if (land != nullptr) {
    if (!land->contains_xy(p.x, p.y)) return true;
    if (land->is_land(nearest_node(land->y(), p.y), nearest_node(land->x(), p.x))) return true;
  }
  for (const auto& poly : polygons) {
    if (poly.contains(p)) return true;
  }
  return false;
}

bool Obstacles::segment_clear(const Vec2& a, const Vec2& b, double step) const {
  const double len = distance(a, b);
  const auto n = static_cast<std::size_t>(std::ceil(len / step));
  for (std::size_t i = 0; i <= n; ++i) {
    const double f = n == 0 ? 0.0 : static_cast<double>(i) / static_cast<double>(n);
    if (blocked(a + (b - a) * f)) return false;
  }
  return true;
}

void SearchGraph::add_edge(std::size_t a, std::size_t b) {
  adjacency_[a].push_back({b, distance(vertices_[a], vertices_[b])});
  ++edge_count_;
}

SearchGraph build_graph(const Region& region, double spacing, int neighbor_set,
                        const Obstacles& obstacles) {
  if (!(spacing > 0.0)) throw GraphError("build_graph: spacing must be positive");
  if (!(region.x_max > region.x_min) && !(region.y_max > region.y_min)) {
    throw GraphError("build_graph: region is degenerate");
  }
  if (region.x_max < region.x_min || region.y_max < region.y_min) {
    throw GraphError("build_graph: region is degenerate");
  }
  if (neighbor_set != 8 && neighbor_set != 16) {
    throw GraphError("build_graph: neighbor_set must be 8 or 16");
  }

  SearchGraph g;
  g.region_ = region;
  g.spacing_ = spacing;
  g.obstacles_ = obstacles;

  const auto nx = static_cast<std::size_t>(std::floor(region.width() / spacing + 1e-9)) + 1;
  const auto ny = static_cast<std::size_t>(std::floor(region.height() / spacing + 1e-9)) + 1;
  g.vertices_.reserve(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const Vec2 p{region.x_min + static_cast<double>(ix) * spacing,
                   region.y_min + static_cast<double>(iy) * spacing};
      g.vertices_.push_back(p);
      g.blocked_.push_back(obstacles.blocked(p) ? 1 : 0);
    }
  }
  g.lattice_count_ = g.vertices_.size();
  g.adjacency_.resize(g.vertices_.size());

  static constexpr int kOffsets[16][2] = {{1, 0},  {1, 1},   {0, 1},  {-1, 1},
                                          {-1, 0}, {-1, -1}, {0, -1}, {1, -1},
                                          {2, 1},  {1, 2},   {-1, 2}, {-2, 1},
                                          {-2, -1}, {-1, -2}, {1, -2}, {2, -1}};
  const double step = spacing / 4.0;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const std::size_t a = iy * nx + ix;
      if (g.blocked_[a]) continue;
      for (int k = 0; k < neighbor_set; ++k) {
        const long jx = static_cast<long>(ix) + kOffsets[k][0];
        const long jy = static_cast<long>(iy) + kOffsets[k][1];
        if (jx < 0 || jy < 0 || jx >= static_cast<long>(nx) || jy >= static_cast<long>(ny)) {
          continue;
        }
        const std::size_t b = static_cast<std::size_t>(jy) * nx + static_cast<std::size_t>(jx);
        if (g.blocked_[b]) continue;
        if (!obstacles.segment_clear(g.vertices_[a], g.vertices_[b], step)) continue;
        g.add_edge(a, b);
      }
    }
  }
  if (g.edge_count_ == 0) throw GraphError("build_graph: empty graph (region fully blocked)");
  return g;
}

std::size_t insert_terminal(SearchGraph& g, const Vec2& point, std::size_t k, const char* name) {
  const std::string who(name);
  if (!g.region_.contains(point)) throw GraphError(who + " lies outside the region");
  if (g.obstacles_.blocked(point)) throw GraphError(who + " lies inside blocked geometry");

  const double merge_tol = 1e-9 * g.spacing_;
  std::vector<std::pair<double, std::size_t>> candidates;
  for (std::size_t v = 0; v < g.lattice_count_; ++v) {
    if (g.blocked_[v]) continue;
    const double d = distance(point, g.vertices_[v]);
    if (d <= merge_tol) return v;
    candidates.emplace_back(d, v);
  }
  std::sort(candidates.begin(), candidates.end());

  const std::size_t idx = g.vertices_.size();
  g.vertices_.push_back(point);
  g.blocked_.push_back(0);
  g.adjacency_.emplace_back();
  std::size_t linked = 0;
  const double step = g.spacing_ / 4.0;
  for (const auto& [d, v] : candidates) {
    if (linked == k) break;
    if (!g.obstacles_.segment_clear(point, g.vertices_[v], step)) continue;
    g.add_edge(idx, v);
    g.add_edge(v, idx);
    ++linked;
  }
  if (linked == 0) throw GraphError(who + " unreachable from lattice");
  return idx;
}

Terminals connect_terminals(SearchGraph& graph, const Vec2& start, const Vec2& goal,
                            std::size_t k) {
  if (k == 0) throw GraphError("connect_terminals: k must be >= 1");
  Terminals t;
  t.start = insert_terminal(graph, start, k, "start");
  t.goal = insert_terminal(graph, goal, k, "goal");
  return t;
}

EdgeCostFn make_glider_cost(const FlowField& field, const VehicleSpec& vehicle,
                            std::vector<DiveProfile> profiles, ProfileCostOptions options) {
  if (profiles.empty()) throw std::invalid_argument("make_glider_cost: empty profile family");
  return [field, vehicle, profiles = std::move(profiles), options](
             const Vec2& from, const Vec2& to, double depart) -> EdgeCost {
    const auto choice = optimal_profile_cost(from, to, depart, profiles, options, field, vehicle);
    return {choice.time, choice.profile};
  };
}

void PlannedPath::update_totals() {
  total_time = arrival_times.empty() ? 0.0 : arrival_times.back() - arrival_times.front();
  total_length = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    total_length += distance(waypoints[i - 1], waypoints[i]);
  }
}

SearchResult tve_dijkstra(const SearchGraph& graph, std::size_t start, std::size_t goal,
                          double t0, const EdgeCostFn& cost, const SearchOptions& options) {
  const std::size_t n = graph.vertex_count();
  if (start >= n || goal >= n) throw GraphError("tve_dijkstra: terminal index out of range");
  if (!std::isfinite(t0)) throw GraphError("tve_dijkstra: start time must be finite");

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<double> label(n, kInfeasible);
  std::vector<std::size_t> pred(n, kNone);
  std::vector<DiveProfile> pred_profile(n);
  std::vector<unsigned char> settled(n, 0);

  // (arrival, vertex): equal arrivals pop in vertex-index order.
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  label[start] = t0;
  queue.emplace(t0, start);

  SearchResult result;
  const auto& verts = graph.vertices();
  while (!queue.empty()) {
    const auto [t, a] = queue.top();
    queue.pop();
    if (settled[a]) continue;
    settled[a] = 1;
    result.settle_times.push_back(t);
    if (a == goal) break;
    for (const Edge& e : graph.out_edges(a)) {
      if (settled[e.to]) continue;
      const EdgeCost c = cost(verts[a], verts[e.to], t);
      ++result.relaxations;
      if (!is_feasible(c.time)) continue;
      const double arrival = t + c.time;
      if (options.probe_all_edges) {
        const double later = t + options.fifo_probe_dt;
        const EdgeCost c2 = cost(verts[a], verts[e.to], later);
        if (later + c2.time < arrival - 1e-9) ++result.fifo_violations;
      }
      if (arrival < label[e.to]) {
        label[e.to] = arrival;
        pred[e.to] = a;
        pred_profile[e.to] = c.profile;
        queue.emplace(arrival, e.to);
      }
    }
  }
  if (!settled[goal]) return result;

  std::vector<std::size_t> chain;
  for (std::size_t v = goal; v != kNone; v = pred[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());

  PlannedPath path;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    path.waypoints.push_back(verts[chain[i]]);
    path.arrival_times.push_back(label[chain[i]]);
    if (i > 0) path.profiles.push_back(pred_profile[chain[i]]);
  }
  path.update_totals();

  if (!options.probe_all_edges) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const double later = path.arrival_times[i] + options.fifo_probe_dt;
      const EdgeCost c2 = cost(path.waypoints[i], path.waypoints[i + 1], later);
      if (later + c2.time < path.arrival_times[i + 1] - 1e-9) ++result.fifo_violations;
    }
  }
  result.vertices = std::move(chain);
  result.path = std::move(path);
  return result;
}

std::vector<LegReport> path_report(const PlannedPath& path, const FlowField& field,
                                   const VehicleSpec& vehicle, std::span<const double> depths) {
  std::vector<LegReport> out;
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    const Vec2 a = path.waypoints[i];
    const Vec2 d = path.waypoints[i + 1] - a;
    for (double z : depths) {
      LegReport r;
      r.leg = i;
      r.depth = z;
      r.depart_time = path.arrival_times[i];
      const auto s = field.at(a.x, a.y, z, r.depart_time);
      if (!s.ok()) {
        r.sample_failed = true;
        out.push_back(r);
        continue;
      }
      r.current_magnitude = s.current.magnitude();
      if (r.current_magnitude == 0.0 || d.norm() == 0.0) {
        r.zero_current = r.current_magnitude == 0.0;
        r.psi_deg = 0.0;
      } else {
        const double cross = d.x * s.current.v - d.y * s.current.u;
        const double dot = d.x * s.current.u + d.y * s.current.v;
        r.psi_deg = std::atan2(cross, dot) * 180.0 / std::numbers::pi;
      }
      r.follow_current =
          r.current_magnitude > vehicle.speed_through_water && std::abs(r.psi_deg) < 90.0;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace glider
