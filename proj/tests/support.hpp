// Shared fixtures for the unit and acceptance tests.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "glider/flowfield.hpp"

namespace gtest_support {

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

using FieldFn = std::function<glider::CurrentVector(double x, double y, double z, double t)>;

/// Samples `f` at every node of the given axes.
inline glider::FlowGrid grid_from(const std::vector<double>& x, const std::vector<double>& y,
                                  const std::vector<double>& z, const std::vector<double>& t,
                                  const FieldFn& f) {
  const std::size_t n = x.size() * y.size() * z.size() * t.size();
  std::vector<double> u(n), v(n);
  std::size_t k = 0;
  for (double tt : t)
    for (double zz : z)
      for (double yy : y)
        for (double xx : x) {
          const auto c = f(xx, yy, zz, tt);
          u[k] = c.u;
          v[k] = c.v;
          ++k;
        }
  return glider::FlowGrid(x, y, z, t, u, v);
}

/// Constant current on a square grid [0, extent]^2, depths [0, z_max].
inline glider::FlowGrid uniform_grid(double u, double v, double extent, double z_max = 200.0,
                                     std::size_t nodes = 5) {
  return grid_from(linspace(0, extent, nodes), linspace(0, extent, nodes), {0.0, z_max},
                   {0.0, 1e7}, [=](double, double, double, double) {
                     return glider::CurrentVector{u, v};
                   });
}

}  // namespace gtest_support
