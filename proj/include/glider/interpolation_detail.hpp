// Separable horizontal stencils shared by interp_xy and sample().
#pragma once

#include <cstddef>
#include <span>

#include "glider/flowfield.hpp"

namespace glider::detail {

struct AxisStencil {
  std::size_t index[4] = {};
  double weight[4] = {};
  std::size_t size = 0;

  void push(std::size_t i, double w) {
    index[size] = i;
    weight[size] = w;
    ++size;
  }
};

/// Node indices and weights along one axis.  q must lie within the axis.
/// Only nodes with non-zero weight are listed.
AxisStencil axis_stencil(std::span<const double> knots, double q, XYMethod method);

ScalarSample apply_stencil(const AxisStencil& sx, const AxisStencil& sy,
                           std::span<const double> values, std::size_t nx,
                           double fill_sentinel);

}  // namespace glider::detail
