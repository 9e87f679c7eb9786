#include "glider/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace glider {

void ProfileFamilySpec::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("profile family: " + msg); };
  if (!(z_min >= 0.0)) fail("z_min must be >= 0");
  if (!(z_climb_to_max >= z_min)) fail("z_climb_to_max must be >= z_min");
  if (!(z_max >= z_climb_to_max)) fail("z_max must be >= z_climb_to_max");
  if (!(z_min_range > 0.0)) fail("z_min_range must be > 0");
  if (n_climb_to_levels < 1) fail("n_climb_to_levels must be >= 1");
  if (n_dive_to_levels < 1) fail("n_dive_to_levels must be >= 1");
}

std::optional<double> effective_speed(const VehicleSpec& vehicle, const CurrentVector& current,
                                      const Vec3& direction) {
  if (std::abs(direction.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("effective_speed: direction must be a unit vector");
  }
  const Vec3 c{current.u, current.v, 0.0};
  const double c_par = c.dot(direction);
  const double c_perp = (c - direction * c_par).norm();
  const double s = vehicle.speed_through_water;
  if (c_perp > s) return std::nullopt;
  const double v = c_par + std::sqrt(s * s - c_perp * c_perp);
  if (!(v > 0.0)) return std::nullopt;
  return v;
}

double travel_time(const Vec3& from, const Vec3& to, double t_start, const FlowField& field,
                   const VehicleSpec& vehicle, int n_sub) {
  if (!std::isfinite(t_start)) return kInfeasible;
  if (n_sub < 1) throw std::invalid_argument("travel_time: n_sub must be >= 1");
  const Vec3 delta = to - from;
  const double length = delta.norm();
  if (length == 0.0) return 0.0;
  const Vec3 dir = delta * (1.0 / length);
  const double piece = length / n_sub;

  double elapsed = 0.0;
  for (int k = 0; k < n_sub; ++k) {
    const Vec3 mid = from + delta * ((k + 0.5) / n_sub);
    const auto s = field.at(mid.x, mid.y, mid.z, t_start + elapsed);
    if (!s.ok()) return kInfeasible;
    const auto v = effective_speed(vehicle, s.current, dir);
    if (!v) return kInfeasible;
    elapsed += piece / *v;
  }
  return elapsed;
}

std::size_t segment_count(double h) {
  if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("step size h must lie in (0, 1]");
  // 1/h can land a rounding error above an integer (h = 0.1).
  return static_cast<std::size_t>(std::ceil(1.0 / h - 1e-9));
}

double glider_travel_time(const Vec2& from, const Vec2& to, const DiveProfile& profile,
                          double t_start, double h, const FlowField& field,
                          const VehicleSpec& vehicle, int n_sub) {
  if (!std::isfinite(t_start)) return kInfeasible;
  if (!(profile.z_climb_to < profile.z_dive_to)) {
    throw std::invalid_argument("glider_travel_time: z_climb_to must be above z_dive_to");
  }
  const std::size_t n = segment_count(h);
  const Vec2 step = (to - from) * (1.0 / static_cast<double>(n));

  double total = 0.0;
  Vec2 seg_start = from;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 seg_end = (i + 1 == n) ? to : seg_start + step;
    const double t = travel_time({seg_start.x, seg_start.y, profile.z_climb_to},
                                 {seg_end.x, seg_end.y, profile.z_dive_to}, t_start + total,
                                 field, vehicle, n_sub);
    if (!is_feasible(t)) return kInfeasible;
    total += t;
    seg_start = seg_end;
  }
  return total;
}

std::vector<DiveProfile> make_dive_profiles(const ProfileFamilySpec& spec) {
  spec.validate();
  auto levels = [](double lo, double hi, std::size_t n, bool single_at_hi) {
    std::vector<double> out(n);
    if (n == 1) {
      out[0] = single_at_hi ? hi : lo;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
  };
  const double dive_lo = spec.z_min + spec.z_min_range;
  if (dive_lo > spec.z_max) {
    throw ConfigError("profile family: z_min_range exceeds z_max - z_min");
  }
  const auto climb = levels(spec.z_min, spec.z_climb_to_max, spec.n_climb_to_levels, false);
  const auto dive = levels(dive_lo, spec.z_max, spec.n_dive_to_levels, true);

  std::vector<DiveProfile> out;
  for (double c : climb) {
    for (double d : dive) {
      const DiveProfile p{c, d};
      if (!(p.amplitude() >= spec.z_min_range - 1e-9)) continue;
      if (std::find(out.begin(), out.end(), p) != out.end()) continue;
      out.push_back(p);
    }
  }
  if (out.empty()) {
    throw ConfigError("profile family: no climb-to/dive-to pair satisfies z_min_range");
  }
  return out;
}

std::string_view to_string(CostMode mode) {
  return mode == CostMode::fastest ? "fastest" : "max_amplitude";
}

CostMode parse_cost_mode(std::string_view name) {
  if (name == "fastest") return CostMode::fastest;
  if (name == "max_amplitude") return CostMode::max_amplitude;
  throw ConfigError("unknown cost mode '" + std::string(name) + "'");
}

int profile_threads() {
  static const int threads = [] {
    if (const char* env = std::getenv("GLIDER_THREADS")) {
      const int n = std::atoi(env);
      if (n > 0) return n;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
  }();
  return threads;
}

std::vector<double> evaluate_profiles_serial(const Vec2& from, const Vec2& to, double t_start,
                                             std::span<const DiveProfile> profiles,
                                             const ProfileCostOptions& options,
                                             const FlowField& field, const VehicleSpec& vehicle) {
  std::vector<double> times(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    times[i] = glider_travel_time(from, to, profiles[i], t_start, options.h, field, vehicle,
                                  options.n_sub);
  }
  return times;
}

std::vector<double> evaluate_profiles_parallel(const Vec2& from, const Vec2& to, double t_start,
                                               std::span<const DiveProfile> profiles,
                                               const ProfileCostOptions& options,
                                               const FlowField& field, const VehicleSpec& vehicle) {
  std::vector<double> times(profiles.size());
  const long n = static_cast<long>(profiles.size());
  const int threads = std::min<int>(profile_threads(), static_cast<int>(std::max(1L, n)));
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    times[k] = glider_travel_time(from, to, profiles[k], t_start, options.h, field, vehicle,
                                  options.n_sub);
  }
  return times;
}

ProfileChoice select_profile(std::span<const DiveProfile> profiles, std::span<const double> times,
                             CostMode mode, double slack_factor) {
  if (profiles.size() != times.size()) {
    throw std::invalid_argument("select_profile: profiles/times size mismatch");
  }
  // Fastest first; equal times prefer the larger amplitude, then list order.
  std::size_t best = kNoProfile;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!is_feasible(times[i])) continue;
    if (best == kNoProfile || times[i] < times[best] ||
        (times[i] == times[best] && profiles[i].amplitude() > profiles[best].amplitude())) {
      best = i;
    }
  }
  if (best == kNoProfile) return {};

  if (mode == CostMode::max_amplitude) {
    const double limit = slack_factor * times[best];
    std::size_t pick = kNoProfile;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (!is_feasible(times[i]) || times[i] > limit) continue;
      if (pick == kNoProfile || profiles[i].amplitude() > profiles[pick].amplitude()) pick = i;
    }
    if (pick != kNoProfile) best = pick;
  }
  return {profiles[best], times[best], best};
}

ProfileChoice optimal_profile_cost(const Vec2& from, const Vec2& to, double t_start,
                                   std::span<const DiveProfile> profiles,
                                   const ProfileCostOptions& options, const FlowField& field,
                                   const VehicleSpec& vehicle) {
  if (profiles.empty()) throw std::invalid_argument("optimal_profile_cost: no profiles");
  if (!std::isfinite(t_start)) return {profiles[0], kInfeasible, kNoProfile};
  const auto times =
      options.execution == Execution::parallel && profiles.size() > 1
          ? evaluate_profiles_parallel(from, to, t_start, profiles, options, field, vehicle)
          : evaluate_profiles_serial(from, to, t_start, profiles, options, field, vehicle);
  auto choice = select_profile(profiles, times, options.mode, options.slack_factor);
  if (choice.index == kNoProfile) choice.profile = profiles[0];
  return choice;
}

}  // namespace glider
