#include "glider/flowfield.hpp"

#include <array>
#include <cmath>
#include <string>

#include "glider/interpolation_detail.hpp"

namespace glider {

double CurrentVector::magnitude() const { return std::hypot(u, v); }

std::string_view to_string(XYMethod m) {
  switch (m) {
    case XYMethod::nearest: return "nearest";
    case XYMethod::bilinear: return "bilinear";
    case XYMethod::bicubic: return "bicubic";
  }
  return "?";
}

std::string_view to_string(AxisMethod m) {
  switch (m) {
    case AxisMethod::nearest: return "nearest";
    case AxisMethod::linear: return "linear";
    case AxisMethod::cubic: return "cubic";
    case AxisMethod::akima: return "akima";
  }
  return "?";
}

XYMethod parse_xy_method(std::string_view name) {
  if (name == "nearest") return XYMethod::nearest;
  if (name == "bilinear") return XYMethod::bilinear;
  if (name == "bicubic") return XYMethod::bicubic;
  throw FlowError("unknown xy interpolation method '" + std::string(name) + "'");
}

AxisMethod parse_axis_method(std::string_view name) {
  if (name == "nearest") return AxisMethod::nearest;
  if (name == "linear") return AxisMethod::linear;
  if (name == "cubic") return AxisMethod::cubic;
  if (name == "akima") return AxisMethod::akima;
  throw FlowError("unknown axis interpolation method '" + std::string(name) + "'");
}

namespace {

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) {
    throw FlowError(std::string("axis ") + name + ": must have at least one value");
  }
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i])) {
      throw FlowError(std::string("axis ") + name + ": non-finite coordinate");
    }
    if (i > 0 && !(axis[i] > axis[i - 1])) {
      throw FlowError(std::string("axis ") + name + ": axis not strictly ascending");
    }
  }
}

}  // namespace

FlowGrid::FlowGrid(std::vector<double> x, std::vector<double> y, std::vector<double> z,
                   std::vector<double> t, std::vector<double> u, std::vector<double> v,
                   double fill_sentinel)
    : x_(std::move(x)),
      y_(std::move(y)),
      z_(std::move(z)),
      t_(std::move(t)),
      u_(std::move(u)),
      v_(std::move(v)),
      fill_(fill_sentinel) {
  check_axis(x_, "x");
  check_axis(y_, "y");
  check_axis(z_, "z");
  check_axis(t_, "t");
  const std::size_t expected = nt() * nz() * ny() * nx();
  if (u_.size() != expected) {
    throw FlowError("field u: expected " + std::to_string(expected) + " values, got " +
                    std::to_string(u_.size()));
  }
  if (v_.size() != expected) {
    throw FlowError("field v: expected " + std::to_string(expected) + " values, got " +
                    std::to_string(v_.size()));
  }
  for (std::size_t i = 0; i < expected; ++i) {
    if ((!is_fill(u_[i]) && !std::isfinite(u_[i])) ||
        (!is_fill(v_[i]) && !std::isfinite(v_[i]))) {
      throw FlowError("field u/v: non-finite value at node " + std::to_string(i));
    }
  }

  land_.assign(ny() * nx(), 1);
  for (std::size_t it = 0; it < nt(); ++it) {
    for (std::size_t iz = 0; iz < nz(); ++iz) {
      for (std::size_t iy = 0; iy < ny(); ++iy) {
        for (std::size_t ix = 0; ix < nx(); ++ix) {
          const std::size_t k = index(it, iz, iy, ix);
          if (!is_fill(u_[k]) && !is_fill(v_[k])) land_[iy * nx() + ix] = 0;
        }
      }
    }
  }
}

std::span<const double> FlowGrid::layer_u(std::size_t it, std::size_t iz) const {
  return std::span<const double>(u_).subspan(index(it, iz, 0, 0), nx() * ny());
}

std::span<const double> FlowGrid::layer_v(std::size_t it, std::size_t iz) const {
  return std::span<const double>(v_).subspan(index(it, iz, 0, 0), nx() * ny());
}

bool FlowGrid::contains_xy(double x, double y) const {
  return !x_.empty() && x >= x_.front() && x <= x_.back() && y >= y_.front() &&
         y <= y_.back();
}

SampleResult sample(const FlowGrid& grid, double x, double y, double z, double t,
                    const InterpScheme& scheme) {
  if (!grid.contains_xy(x, y)) return {{}, SampleStatus::out_of_domain};

  const auto sx = detail::axis_stencil(grid.x(), x, scheme.xy);
  const auto sy = detail::axis_stencil(grid.y(), y, scheme.xy);

  const std::span<const double> zk(grid.z());
  const std::span<const double> tk(grid.t());
  const KnotRange zr = knot_support(zk, z, scheme.z);
  const KnotRange tr = knot_support(tk, t, scheme.t);
  const auto zknots = zk.subspan(zr.first, zr.last - zr.first);
  const auto tknots = tk.subspan(tr.first, tr.last - tr.first);

  std::array<double, 6> zu{}, zv{}, tu{}, tv{};
  for (std::size_t it = tr.first; it < tr.last; ++it) {
    for (std::size_t iz = zr.first; iz < zr.last; ++iz) {
      const auto su = detail::apply_stencil(sx, sy, grid.layer_u(it, iz), grid.nx(),
                                            grid.fill_sentinel());
      const auto sv = detail::apply_stencil(sx, sy, grid.layer_v(it, iz), grid.nx(),
                                            grid.fill_sentinel());
      if (su.status != SampleStatus::ok || sv.status != SampleStatus::ok) {
        return {{}, SampleStatus::land};
      }
      zu[iz - zr.first] = su.value;
      zv[iz - zr.first] = sv.value;
    }
    const std::span<const double> zus(zu.data(), zknots.size());
    const std::span<const double> zvs(zv.data(), zknots.size());
    tu[it - tr.first] = interp_1d(zknots, zus, z, scheme.z);
    tv[it - tr.first] = interp_1d(zknots, zvs, z, scheme.z);
  }
  const std::span<const double> tus(tu.data(), tknots.size());
  const std::span<const double> tvs(tv.data(), tknots.size());
  return {{interp_1d(tknots, tus, t, scheme.t), interp_1d(tknots, tvs, t, scheme.t)},
          SampleStatus::ok};
}

std::vector<SampleResult> sample_batch_serial(const FlowGrid& grid,
                                              std::span<const SamplePoint> points,
                                              const InterpScheme& scheme) {
  std::vector<SampleResult> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    out[i] = sample(grid, p.x, p.y, p.z, p.t, scheme);
  }
  return out;
}

std::vector<SampleResult> sample_batch(const FlowGrid& grid,
                                       std::span<const SamplePoint> points,
                                       const InterpScheme& scheme) {
  std::vector<SampleResult> out(points.size());
  const auto n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = sample(grid, p.x, p.y, p.z, p.t, scheme);
  }
  return out;
}

}  // namespace glider
