// Over-ground speed and travel-time evaluation for straight legs and glider
// dive profiles.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "glider/flowfield.hpp"
#include "glider/geometry.hpp"

namespace glider {

struct VehicleSpec {
  double speed_through_water = 0.3;  // m/s
};

struct DiveProfile {
  double z_climb_to = 0.0;  // shallow turn depth, m
  double z_dive_to = 0.0;   // deep turn depth, m

  double amplitude() const { return z_dive_to - z_climb_to; }
  friend bool operator==(const DiveProfile&, const DiveProfile&) = default;
};

struct ProfileFamilySpec {
  double z_min = 0.0;
  double z_max = 100.0;
  double z_climb_to_max = 0.0;
  double z_min_range = 100.0;
  std::size_t n_climb_to_levels = 1;
  std::size_t n_dive_to_levels = 1;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// A flow grid bound to the interpolation scheme used to query it.
struct FlowField {
  const FlowGrid* grid = nullptr;
  InterpScheme scheme;

  SampleResult at(double x, double y, double z, double t) const {
    return sample(*grid, x, y, z, t, scheme);
  }
};

/// Speed along `direction` (unit 3-D vector) after crabbing against the
/// cross-track part of the current.  nullopt when the vehicle cannot make
/// positive headway.  Throws std::invalid_argument for a non-unit direction.
std::optional<double> effective_speed(const VehicleSpec& vehicle, const CurrentVector& current,
                                      const Vec3& direction);

/// Simulates a straight 3-D leg in n_sub equal pieces.  Each piece samples the
/// current at its midpoint at the clock time it is entered.  Returns the
/// travel time or kInfeasible (adverse current, land, leaving the grid, or an
/// infinite start time).
double travel_time(const Vec3& from, const Vec3& to, double t_start, const FlowField& field,
                   const VehicleSpec& vehicle, int n_sub = 4);

/// Splits the horizontal leg into ceil(1/h) segments and flies each one as a
/// straight dive from z_climb_to down to z_dive_to, chaining start times.
double glider_travel_time(const Vec2& from, const Vec2& to, const DiveProfile& profile,
                          double t_start, double h, const FlowField& field,
                          const VehicleSpec& vehicle, int n_sub = 4);

/// Number of dive segments for step size h.
std::size_t segment_count(double h);

/// Climb-to major, dive-to minor.  Throws ConfigError when no pair meets the
/// minimum amplitude.
std::vector<DiveProfile> make_dive_profiles(const ProfileFamilySpec& spec);

enum class CostMode { fastest, max_amplitude };

std::string_view to_string(CostMode mode);
CostMode parse_cost_mode(std::string_view name);

enum class Execution { serial, parallel };

struct ProfileCostOptions {
  double h = 0.25;
  CostMode mode = CostMode::fastest;
  double slack_factor = 1.1;
  int n_sub = 4;
  Execution execution = Execution::parallel;
};

inline constexpr std::size_t kNoProfile = static_cast<std::size_t>(-1);

struct ProfileChoice {
  DiveProfile profile;
  double time = kInfeasible;
  std::size_t index = kNoProfile;  // into the profile list; kNoProfile if all infeasible
};

/// glider_travel_time for every profile, in list order.
std::vector<double> evaluate_profiles_serial(const Vec2& from, const Vec2& to, double t_start,
                                             std::span<const DiveProfile> profiles,
                                             const ProfileCostOptions& options,
                                             const FlowField& field, const VehicleSpec& vehicle);
/// Same contract, profiles fanned out over OpenMP threads.
std::vector<double> evaluate_profiles_parallel(const Vec2& from, const Vec2& to, double t_start,
                                               std::span<const DiveProfile> profiles,
                                               const ProfileCostOptions& options,
                                               const FlowField& field, const VehicleSpec& vehicle);

/// Deterministic reduction over per-profile times.
ProfileChoice select_profile(std::span<const DiveProfile> profiles, std::span<const double> times,
                             CostMode mode, double slack_factor);

ProfileChoice optimal_profile_cost(const Vec2& from, const Vec2& to, double t_start,
                                   std::span<const DiveProfile> profiles,
                                   const ProfileCostOptions& options, const FlowField& field,
                                   const VehicleSpec& vehicle);

/// Threads used by parallel profile evaluation: GLIDER_THREADS if set and
/// positive, else the OpenMP default.
int profile_threads();

}  // namespace glider
