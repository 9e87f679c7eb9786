// Waypoint merging for paths planned in a time-varying current field.
//
// A waypoint is dropped when flying straight past it is no slower locally and
// does not delay the arrival at the goal.  Passes repeat until the waypoint
// count stops shrinking.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "glider/search.hpp"

namespace glider {

struct SmoothingTrace {
  std::size_t iterations = 0;
  std::size_t merges_accepted = 0;
  std::size_t merges_rejected_infeasible = 0;   // direct leg impassable
  std::size_t merges_rejected_slower_local = 0; // direct leg slower than the two it replaces
  std::size_t merges_rejected_slower_goal = 0;  // merge would delay the goal
  /// Goal arrival as carried through the merge bookkeeping.
  double goal_arrival_literal = kInfeasible;
  /// Goal arrival from replaying the final waypoints through the cost function.
  double goal_arrival_replayed = kInfeasible;
};

struct SmoothedPath {
  std::vector<Vec2> waypoints;
  std::vector<double> arrival_times;
  SmoothingTrace trace;
};

/// Chained arrival times; the first impassable leg and everything after it
/// are kInfeasible.
std::vector<double> recompute_arrivals(std::span<const Vec2> waypoints, double t0,
                                       const EdgeCostFn& cost);

/// Comparisons treat differences up to this many seconds as ties.
inline constexpr double kMergeTolerance = 1e-9;

SmoothedPath smooth_path(std::span<const Vec2> waypoints, double t0, const EdgeCostFn& cost);

/// Rebuilds a PlannedPath (arrival times and per-leg profiles) for the given
/// waypoints by replaying them through `cost`.
PlannedPath replay_path(std::span<const Vec2> waypoints, double t0, const EdgeCostFn& cost);

}  // namespace glider
