#include "glider/smoothing.hpp"

#include <algorithm>
#include <cmath>

namespace glider {

namespace {

double leg_time(const EdgeCostFn& cost, const Vec2& a, const Vec2& b, double depart) {
  if (!is_feasible(depart)) return kInfeasible;
  return cost(a, b, depart).time;
}

struct Smoother {
  const EdgeCostFn& cost;
  std::vector<Vec2> wp;
  std::vector<double> tt;
  double goal_bound;
  SmoothingTrace trace;

  double travel(std::size_t from, std::size_t to, double depart) const {
    return leg_time(cost, wp[from], wp[to], depart);
  }

  // One sweep from the start waypoint to the goal.
  void pass() {
    const std::size_t end = wp.size() - 1;
    std::vector<Vec2> wp_s{wp[0]};
    std::vector<double> tt_s{tt[0]};
    std::size_t i_start = 0;
    double t1 = tt[1] - tt[0];
    bool merge = true;

    for (std::size_t ip = 2; ip <= end; ++ip) {
      merge = true;
      const double t2 = travel(ip - 1, ip, tt[ip - 1]);
      const double t_sum = travel(i_start, ip, tt[i_start]);
      if (!is_feasible(t_sum)) {
        merge = false;
        ++trace.merges_rejected_infeasible;
      } else if (t1 + t2 < t_sum - kMergeTolerance) {
        merge = false;
        ++trace.merges_rejected_slower_local;
      } else {
        double t_end = tt[i_start] + t_sum;
        for (std::size_t i_end = ip + 1; i_end <= end; ++i_end) {
          t_end += leg_time(cost, wp[i_end - 1], wp[i_end], t_end);
        }
        if (t_end > std::min(tt[end], goal_bound) + kMergeTolerance) {
          merge = false;
          ++trace.merges_rejected_slower_goal;
        } else {
          tt[end] = std::min(tt[end], t_end);
        }
      }

      if (merge) {
        ++trace.merges_accepted;
        t1 = t_sum;
        tt[ip] = tt[i_start] + t_sum;
      } else {
        tt[ip - 1] = tt[i_start] + t1;
        tt[ip] = tt[i_start] + t1 + t2;
        i_start = ip - 1;
        t1 = t2;
        tt_s.push_back(tt[i_start]);
        wp_s.push_back(wp[i_start]);
      }
    }
    if (!merge) tt[end] = tt[end - 1] + travel(end - 1, end, tt[end - 1]);
    tt_s.push_back(tt[end]);
    wp_s.push_back(wp[end]);
    wp = std::move(wp_s);
    tt = std::move(tt_s);
  }
};

}  // namespace

std::vector<double> recompute_arrivals(std::span<const Vec2> waypoints, double t0,
                                       const EdgeCostFn& cost) {
  std::vector<double> tt;
  if (waypoints.empty()) return tt;
  tt.reserve(waypoints.size());
  tt.push_back(t0);
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const double prev = tt.back();
    tt.push_back(prev + leg_time(cost, waypoints[i - 1], waypoints[i], prev));
  }
  return tt;
}

SmoothedPath smooth_path(std::span<const Vec2> waypoints, double t0, const EdgeCostFn& cost) {
  Smoother s{cost, {waypoints.begin(), waypoints.end()}, recompute_arrivals(waypoints, t0, cost),
             kInfeasible, {}};
  if (!s.tt.empty()) s.goal_bound = s.tt.back();

  // An impassable input has no arrival to protect; it is returned as is.
  if (s.wp.size() > 2 && is_feasible(s.goal_bound)) {
    std::size_t before = 0;
    do {
      before = s.wp.size();
      s.pass();
      ++s.trace.iterations;
    } while (s.wp.size() < before && s.wp.size() > 2);
  }

  s.trace.goal_arrival_literal = s.tt.empty() ? kInfeasible : s.tt.back();
  const auto replayed = recompute_arrivals(s.wp, t0, cost);
  s.trace.goal_arrival_replayed = replayed.empty() ? kInfeasible : replayed.back();
  return {std::move(s.wp), std::move(s.tt), s.trace};
}

PlannedPath replay_path(std::span<const Vec2> waypoints, double t0, const EdgeCostFn& cost) {
  PlannedPath path;
  path.waypoints.assign(waypoints.begin(), waypoints.end());
  if (waypoints.empty()) return path;
  path.arrival_times.push_back(t0);
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const double depart = path.arrival_times.back();
    EdgeCost c;
    if (is_feasible(depart)) c = cost(waypoints[i - 1], waypoints[i], depart);
    path.arrival_times.push_back(depart + c.time);
    path.profiles.push_back(c.profile);
  }
  path.update_totals();
  return path;
}

}  // namespace glider
