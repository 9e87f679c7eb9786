#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "glider/flowfield.hpp"

namespace glider {

SynthKind parse_synth_kind(std::string_view name) {
  if (name == "uniform") return SynthKind::uniform;
  if (name == "gyre") return SynthKind::gyre;
  if (name == "tidal_channel" || name == "tidal") return SynthKind::tidal_channel;
  throw FlowError("unknown synthetic field kind '" + std::string(name) + "'");
}

namespace {

std::vector<double> linspace(double start, double extent, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? start : start + extent * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace

FlowGrid synth_field(SynthKind kind, const SynthParams& p, const GridDims& dims) {
  if (dims.nx == 0 || dims.ny == 0 || dims.nz == 0 || dims.nt == 0) {
    throw FlowError("synth: every grid dimension must be >= 1");
  }
  if (dims.x_extent <= 0.0 || dims.y_extent <= 0.0) {
    throw FlowError("synth: horizontal extents must be positive");
  }
  if ((dims.nz > 1 && dims.z_max <= 0.0) || (dims.nt > 1 && dims.duration <= 0.0)) {
    throw FlowError("synth: z_max and duration must be positive for multi-level axes");
  }
  if ((kind == SynthKind::gyre || kind == SynthKind::tidal_channel) && !(p.period > 0.0)) {
    throw FlowError("synth: period must be positive");
  }

  auto x = linspace(0.0, dims.x_extent, dims.nx);
  auto y = linspace(0.0, dims.y_extent, dims.ny);
  auto z = linspace(0.0, dims.z_max, dims.nz);
  auto t = linspace(dims.t_start, dims.duration, dims.nt);

  const std::size_t count = dims.nt * dims.nz * dims.ny * dims.nx;
  std::vector<double> u(count), v(count);
  const double pi = std::numbers::pi;
  const double omega = 2.0 * pi / p.period;

  // Double gyre on [0, 2] x [0, 1] in scaled coordinates:
  //   psi = A sin(pi f(X, t)) sin(pi Y),  f = e sin(wt) X^2 + (1 - 2 e sin(wt)) X
  // mapped to metres so that u = -dpsi/dy and v = dpsi/dx stay divergence-free.
  const double ratio = 2.0 * dims.y_extent / dims.x_extent;

#pragma omp parallel for collapse(2) schedule(static)
  for (long it = 0; it < static_cast<long>(dims.nt); ++it) {
    for (long iz = 0; iz < static_cast<long>(dims.nz); ++iz) {
      const double tt = t[static_cast<std::size_t>(it)];
      const double zz = z[static_cast<std::size_t>(iz)];
      const double depth_scale = p.decay_depth > 0.0 ? std::exp(-zz / p.decay_depth) : 1.0;
      for (std::size_t iy = 0; iy < dims.ny; ++iy) {
        for (std::size_t ix = 0; ix < dims.nx; ++ix) {
          double uu = 0.0, vv = 0.0;
          switch (kind) {
            case SynthKind::uniform:
              uu = p.u0;
              vv = p.v0;
              break;
            case SynthKind::tidal_channel:
              uu = p.amplitude * std::sin(omega * (tt - dims.t_start));
              break;
            case SynthKind::gyre: {
              const double X = 2.0 * x[ix] / dims.x_extent;
              const double Y = y[iy] / dims.y_extent;
              const double a = p.epsilon * std::sin(omega * (tt - dims.t_start));
              const double f = a * X * X + (1.0 - 2.0 * a) * X;
              const double dfdx = 2.0 * a * X + (1.0 - 2.0 * a);
              uu = -p.amplitude * std::sin(pi * f) * std::cos(pi * Y);
              vv = p.amplitude * ratio * std::cos(pi * f) * std::sin(pi * Y) * dfdx;
              break;
            }
          }
          const std::size_t k =
              ((static_cast<std::size_t>(it) * dims.nz + static_cast<std::size_t>(iz)) * dims.ny + iy) *
                  dims.nx + ix;
          u[k] = uu * depth_scale;
          v[k] = vv * depth_scale;
        }
      }
    }
  }

  if (p.noise > 0.0) {
    std::mt19937 rng(p.seed);
    std::uniform_real_distribution<double> dist(-p.noise, p.noise);
    for (std::size_t k = 0; k < count; ++k) {
      u[k] += dist(rng);
      v[k] += dist(rng);
    }
  }

  const double fill = FlowGrid::kDefaultFill;
  for (const auto& island : p.islands) {
    for (std::size_t iy = 0; iy < dims.ny; ++iy) {
      for (std::size_t ix = 0; ix < dims.nx; ++ix) {
        if (std::hypot(x[ix] - island.x, y[iy] - island.y) > island.radius) continue;
        for (std::size_t l = 0; l < dims.nt * dims.nz; ++l) {
          u[(l * dims.ny + iy) * dims.nx + ix] = fill;
          v[(l * dims.ny + iy) * dims.nx + ix] = fill;
        }
      }
    }
  }

  return FlowGrid(std::move(x), std::move(y), std::move(z), std::move(t), std::move(u),
                  std::move(v), FlowGrid::kDefaultFill);
}

}  // namespace glider
