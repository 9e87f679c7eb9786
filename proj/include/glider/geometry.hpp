#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace glider {

/// Invalid user configuration (mission file, profile family, CLI values).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Travel times are seconds; an impassable leg is +infinity, so that
/// infinity + x = infinity and extended-real comparisons hold.
inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

inline bool is_feasible(double travel_time) { return travel_time < kInfeasible; }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (b - a).norm(); }

}  // namespace glider
