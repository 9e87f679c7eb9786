// Geometric graph over the mission region and the time-varying Dijkstra
// search (edge costs evaluated at the departure time of each relaxation).
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "glider/flowfield.hpp"
#include "glider/geometry.hpp"
#include "glider/kinematics.hpp"

namespace glider {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Region {
  double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;

  bool contains(const Vec2& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

struct Polygon {
  std::vector<Vec2> vertices;

  /// Even-odd rule; points on the boundary count as inside.
  bool contains(const Vec2& p) const;
};

/// Impassable geometry: land nodes of a flow grid (a point is blocked when
/// its nearest grid node is land, or it lies off the grid) and polygons.
struct Obstacles {
  const FlowGrid* land = nullptr;
  std::vector<Polygon> polygons;

  bool blocked(const Vec2& p) const;
  /// Samples the segment every `step` metres, endpoints included.
  bool segment_clear(const Vec2& a, const Vec2& b, double step) const;
};

struct Edge {
  std::size_t to = 0;
  double length = 0.0;
};

class SearchGraph {
 public:
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Edge>& out_edges(std::size_t v) const { return adjacency_[v]; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t lattice_vertex_count() const { return lattice_count_; }
  bool vertex_blocked(std::size_t v) const { return blocked_[v] != 0; }
  const Region& region() const { return region_; }
  double spacing() const { return spacing_; }
  const Obstacles& obstacles() const { return obstacles_; }

 private:
  friend SearchGraph build_graph(const Region&, double, int, const Obstacles&);
  friend std::size_t insert_terminal(SearchGraph&, const Vec2&, std::size_t, const char*);

  void add_edge(std::size_t a, std::size_t b);

  std::vector<Vec2> vertices_;
  std::vector<std::vector<Edge>> adjacency_;
  std::vector<unsigned char> blocked_;
  std::size_t edge_count_ = 0;
  std::size_t lattice_count_ = 0;
  Region region_;
  double spacing_ = 0.0;
  Obstacles obstacles_;
};

/// Lattice at `spacing` with directed edges to the 8-neighbourhood, or the
/// 16-neighbourhood adding knight moves.  Edges touching blocked geometry
/// (checked every spacing/4) are dropped.  Throws GraphError if no edge
/// survives.
SearchGraph build_graph(const Region& region, double spacing, int neighbor_set,
                        const Obstacles& obstacles);

/// Adds `point` as a vertex linked both ways to its k nearest reachable
/// lattice vertices, or reuses the lattice vertex it coincides with.
/// `name` appears in error messages.
std::size_t insert_terminal(SearchGraph& graph, const Vec2& point, std::size_t k,
                            const char* name);

struct Terminals {
  std::size_t start = 0;
  std::size_t goal = 0;
};

Terminals connect_terminals(SearchGraph& graph, const Vec2& start, const Vec2& goal,
                            std::size_t k);

struct EdgeCost {
  double time = kInfeasible;
  DiveProfile profile;
};

/// (from, to, departure time) -> travel time and the dive profile flown.
using EdgeCostFn = std::function<EdgeCost(const Vec2&, const Vec2&, double)>;

/// EdgeCostFn backed by optimal_profile_cost over a fixed profile family.
EdgeCostFn make_glider_cost(const FlowField& field, const VehicleSpec& vehicle,
                            std::vector<DiveProfile> profiles, ProfileCostOptions options);

struct PlannedPath {
  std::vector<Vec2> waypoints;
  std::vector<double> arrival_times;
  std::vector<DiveProfile> profiles;  // one per leg
  double total_time = 0.0;
  double total_length = 0.0;

  /// Fills total_time and total_length from the other fields.
  void update_totals();
};

struct SearchOptions {
  /// Departure offset used to probe legs of the result for FIFO violations.
  double fifo_probe_dt = 600.0;
  /// Also probe every relaxed edge (doubles cost evaluations).
  bool probe_all_edges = false;
};

struct SearchResult {
  std::optional<PlannedPath> path;  // nullopt: goal unreachable
  std::vector<std::size_t> vertices;  // graph indices along the path
  std::vector<double> settle_times;   // labels in finalisation order
  std::size_t relaxations = 0;
  std::size_t fifo_violations = 0;
};

SearchResult tve_dijkstra(const SearchGraph& graph, std::size_t start, std::size_t goal,
                          double t0, const EdgeCostFn& cost, const SearchOptions& options = {});

struct LegReport {
  std::size_t leg = 0;
  double depth = 0.0;
  double depart_time = 0.0;
  double current_magnitude = 0.0;
  double psi_deg = 0.0;  // signed angle from leg direction to current, (-180, 180]
  bool zero_current = false;
  bool follow_current = false;  // |current| > vehicle speed and |psi| < 90
  bool sample_failed = false;   // land or outside the grid
};

/// Current magnitude and angle to the track at each leg's departure point and
/// time, for every requested depth.
std::vector<LegReport> path_report(const PlannedPath& path, const FlowField& field,
                                   const VehicleSpec& vehicle, std::span<const double> depths);

}  // namespace glider
