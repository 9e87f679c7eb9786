#include "glider/interpolation_detail.hpp"

#include <algorithm>
#include <cmath>

#include "glider/flowfield.hpp"

namespace glider {

namespace {

AxisMethod effective_method(std::size_t n, AxisMethod method) {
  if (n == 1) return AxisMethod::nearest;
  if (n == 2 && (method == AxisMethod::cubic || method == AxisMethod::akima)) {
    return AxisMethod::linear;
  }
  return method;
}

// Largest i with knots[i] <= q, capped at n - 2.  q is assumed clamped.
std::size_t locate(std::span<const double> knots, double q) {
  auto it = std::upper_bound(knots.begin(), knots.end(), q);
  std::size_t i = it == knots.begin() ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
  return std::min(i, knots.size() - 2);
}

// Cubic Hermite on [0, 1] written relative to the left value so that constant
// data is reproduced bit-exactly.
double hermite(double y0, double y1, double d0, double d1, double width, double s) {
  if (s == 1.0) return y1;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h11 = s3 - s2;
  return y0 + h01 * (y1 - y0) + width * (h10 * d0 + h11 * d1);
}

double catmull_rom_tangent(std::span<const double> k, std::span<const double> v,
                           std::size_t j) {
  const std::size_t n = k.size();
  if (j == 0) return (v[1] - v[0]) / (k[1] - k[0]);
  if (j == n - 1) return (v[n - 1] - v[n - 2]) / (k[n - 1] - k[n - 2]);
  return (v[j + 1] - v[j - 1]) / (k[j + 1] - k[j - 1]);
}

// Secant slope of interval j, extended past both ends by Akima's rule
// m[-1] = 2 m[0] - m[1], m[-2] = 2 m[-1] - m[0] (mirrored at the far end).
double akima_slope(std::span<const double> k, std::span<const double> v, long j) {
  const long last = static_cast<long>(k.size()) - 2;  // last real interval
  if (j < 0) {
    return 2.0 * akima_slope(k, v, j + 1) - akima_slope(k, v, j + 2);
  }
  if (j > last) {
    return 2.0 * akima_slope(k, v, j - 1) - akima_slope(k, v, j - 2);
  }
  const auto ju = static_cast<std::size_t>(j);
  return (v[ju + 1] - v[ju]) / (k[ju + 1] - k[ju]);
}

double akima_tangent(std::span<const double> k, std::span<const double> v, long j) {
  const double m_m2 = akima_slope(k, v, j - 2);
  const double m_m1 = akima_slope(k, v, j - 1);
  const double m_0 = akima_slope(k, v, j);
  const double m_p1 = akima_slope(k, v, j + 1);
  const double w1 = std::abs(m_p1 - m_0);
  const double w2 = std::abs(m_m1 - m_m2);
  if (w1 + w2 == 0.0) return 0.5 * (m_m1 + m_0);
  return (w1 * m_m1 + w2 * m_0) / (w1 + w2);
}

}  // namespace

KnotRange knot_support(std::span<const double> knots, double q, AxisMethod method) {
  const std::size_t n = knots.size();
  if (n == 0) throw FlowError("interpolation: empty knots");
  method = effective_method(n, method);
  if (n == 1) return {0, 1};
  q = std::clamp(q, knots.front(), knots.back());
  const std::size_t i = locate(knots, q);
  switch (method) {
    case AxisMethod::nearest: {
      const std::size_t j = (q - knots[i] <= knots[i + 1] - q) ? i : i + 1;
      return {j, j + 1};
    }
    case AxisMethod::linear:
      return {i, i + 2};
    case AxisMethod::cubic:
      return {i == 0 ? 0 : i - 1, std::min(i + 3, n)};
    case AxisMethod::akima:
      return {i < 2 ? 0 : i - 2, std::min(i + 4, n)};
  }
  return {0, n};
}

double interp_1d(std::span<const double> knots, std::span<const double> values,
                 double q, AxisMethod method) {
  const std::size_t n = knots.size();
  if (n == 0) throw FlowError("interpolation: empty knots");
  if (values.size() != n) throw FlowError("interpolation: knots/values size mismatch");
  method = effective_method(n, method);
  if (n == 1) return values[0];

  q = std::clamp(q, knots.front(), knots.back());
  const std::size_t i = locate(knots, q);
  const double width = knots[i + 1] - knots[i];
  const double s = (q - knots[i]) / width;

  switch (method) {
    case AxisMethod::nearest:
      return (q - knots[i] <= knots[i + 1] - q) ? values[i] : values[i + 1];
    case AxisMethod::linear:
      if (s == 1.0) return values[i + 1];
      return values[i] + s * (values[i + 1] - values[i]);
    case AxisMethod::cubic:
      return hermite(values[i], values[i + 1], catmull_rom_tangent(knots, values, i),
                     catmull_rom_tangent(knots, values, i + 1), width, s);
    case AxisMethod::akima: {
      const auto li = static_cast<long>(i);
      return hermite(values[i], values[i + 1], akima_tangent(knots, values, li),
                     akima_tangent(knots, values, li + 1), width, s);
    }
  }
  return values[i];
}

namespace detail {

AxisStencil axis_stencil(std::span<const double> knots, double q, XYMethod method) {
  AxisStencil st;
  const std::size_t n = knots.size();
  if (n == 1) {
    st.push(0, 1.0);
    return st;
  }
  if (method == XYMethod::bicubic && n < 3) method = XYMethod::bilinear;

  const std::size_t i = locate(knots, q);
  const double width = knots[i + 1] - knots[i];
  const double s = (q - knots[i]) / width;

  if (method == XYMethod::nearest) {
    st.push(s <= 0.5 ? i : i + 1, 1.0);
    return st;
  }
  if (s == 0.0) {
    st.push(i, 1.0);
    return st;
  }
  if (s == 1.0) {
    st.push(i + 1, 1.0);
    return st;
  }
  if (method == XYMethod::bilinear) {
    st.push(i, 1.0 - s);
    st.push(i + 1, s);
    return st;
  }

  // Catmull-Rom: Hermite basis with central-difference tangents (one-sided at
  // the axis ends), expanded into per-node weights.
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h10 = (s3 - 2.0 * s2 + s) * width;
  const double h11 = (s3 - s2) * width;

  double w[4] = {0.0, h00, h01, 0.0};  // nodes i-1, i, i+1, i+2
  // tangent at i
  if (i == 0) {
    const double d = 1.0 / (knots[1] - knots[0]);
    w[1] -= h10 * d;
    w[2] += h10 * d;
  } else {
    const double d = 1.0 / (knots[i + 1] - knots[i - 1]);
    w[0] -= h10 * d;
    w[2] += h10 * d;
  }
  // tangent at i + 1
  if (i + 1 == n - 1) {
    const double d = 1.0 / (knots[i + 1] - knots[i]);
    w[1] -= h11 * d;
    w[2] += h11 * d;
  } else {
    const double d = 1.0 / (knots[i + 2] - knots[i]);
    w[1] -= h11 * d;
    w[3] += h11 * d;
  }
  if (i > 0 && w[0] != 0.0) st.push(i - 1, w[0]);
  st.push(i, w[1]);
  st.push(i + 1, w[2]);
  if (i + 2 < n && w[3] != 0.0) st.push(i + 2, w[3]);
  return st;
}

ScalarSample apply_stencil(const AxisStencil& sx, const AxisStencil& sy,
                           std::span<const double> values, std::size_t nx,
                           double fill_sentinel) {
  double acc = 0.0;
  for (std::size_t b = 0; b < sy.size; ++b) {
    double row = 0.0;
    const std::size_t base = sy.index[b] * nx;
    for (std::size_t a = 0; a < sx.size; ++a) {
      const double node = values[base + sx.index[a]];
      if (node == fill_sentinel) {
        return {0.0, SampleStatus::land};
      }
      row += sx.weight[a] * node;
    }
    acc += sy.weight[b] * row;
  }
  return {acc, SampleStatus::ok};
}

}  // namespace detail

ScalarSample interp_xy(const Layer2D& layer, double x, double y, XYMethod method) {
  if (layer.x.empty() || layer.y.empty()) throw FlowError("interp_xy: empty axis");
  if (layer.values.size() != layer.x.size() * layer.y.size()) {
    throw FlowError("interp_xy: layer size does not match axes");
  }
  if (x < layer.x.front() || x > layer.x.back() || y < layer.y.front() ||
      y > layer.y.back()) {
    return {0.0, SampleStatus::out_of_domain};
  }
  const auto sx = detail::axis_stencil(layer.x, x, method);
  const auto sy = detail::axis_stencil(layer.y, y, method);
  return detail::apply_stencil(sx, sy, layer.values, layer.x.size(), layer.fill_sentinel);
}

}  // namespace glider
