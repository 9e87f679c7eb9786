// Gridded ocean-current fields and the point-query interpolation pipeline.
//
// A FlowGrid holds horizontal current components (u east, v north) on a
// rectilinear (t, z, y, x) lattice.  Point queries interpolate horizontally
// on each depth layer, then along depth, then along time.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace glider {

/// Raised for malformed or inconsistent flow data.
class FlowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurrentVector {
  double u = 0.0;  // m/s east
  double v = 0.0;  // m/s north

  double magnitude() const;
};

enum class XYMethod { nearest, bilinear, bicubic };
enum class AxisMethod { nearest, linear, cubic, akima };

struct InterpScheme {
  XYMethod xy = XYMethod::bilinear;
  AxisMethod z = AxisMethod::linear;
  AxisMethod t = AxisMethod::linear;
};

std::string_view to_string(XYMethod m);
std::string_view to_string(AxisMethod m);
XYMethod parse_xy_method(std::string_view name);
AxisMethod parse_axis_method(std::string_view name);

enum class SampleStatus { ok, out_of_domain, land };

struct SampleResult {
  CurrentVector current;
  SampleStatus status = SampleStatus::ok;

  bool ok() const { return status == SampleStatus::ok; }
};

/// Interpolated scalar with a land/out-of-domain signal.
struct ScalarSample {
  double value = 0.0;
  SampleStatus status = SampleStatus::ok;
};

/// Immutable after construction.  Node arrays are row-major [t][z][y][x].
class FlowGrid {
 public:
  static constexpr double kDefaultFill = -9999.0;

  FlowGrid() = default;

  /// Validates every invariant; throws FlowError naming the offending axis
  /// or field.
  FlowGrid(std::vector<double> x, std::vector<double> y, std::vector<double> z,
           std::vector<double> t, std::vector<double> u, std::vector<double> v,
           double fill_sentinel = kDefaultFill);

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& z() const { return z_; }
  const std::vector<double>& t() const { return t_; }
  const std::vector<double>& u() const { return u_; }
  const std::vector<double>& v() const { return v_; }
  double fill_sentinel() const { return fill_; }

  std::size_t nx() const { return x_.size(); }
  std::size_t ny() const { return y_.size(); }
  std::size_t nz() const { return z_.size(); }
  std::size_t nt() const { return t_.size(); }

  std::size_t index(std::size_t it, std::size_t iz, std::size_t iy,
                    std::size_t ix) const {
    return ((it * nz() + iz) * ny() + iy) * nx() + ix;
  }

  /// Contiguous ny*nx slice of one component at (t, z).
  std::span<const double> layer_u(std::size_t it, std::size_t iz) const;
  std::span<const double> layer_v(std::size_t it, std::size_t iz) const;

  bool is_fill(double value) const {
    return value == fill_;
  }

  /// Land iff u or v holds the fill value at every (t, z) of the column.
  bool is_land(std::size_t iy, std::size_t ix) const {
    return land_[iy * nx() + ix] != 0;
  }

  bool contains_xy(double x, double y) const;

 private:
  std::vector<double> x_, y_, z_, t_;
  std::vector<double> u_, v_;
  double fill_ = kDefaultFill;
  std::vector<unsigned char> land_;
};

/// Read-only view of a single 2-D scalar layer on the grid's horizontal axes.
struct Layer2D {
  std::span<const double> x;
  std::span<const double> y;
  std::span<const double> values;  // row-major [y][x]
  double fill_sentinel = FlowGrid::kDefaultFill;
};

ScalarSample interp_xy(const Layer2D& layer, double x, double y, XYMethod method);

/// One-dimensional interpolation with boundary clamping.  Methods degrade on
/// short axes: cubic/akima need 3 knots, linear needs 2.
double interp_1d(std::span<const double> knots, std::span<const double> values,
                 double q, AxisMethod method);

/// Half-open knot index range [first, last) that interp_1d reads for q.
/// Evaluating interp_1d on that sub-range yields the same result as on the
/// full axis.
struct KnotRange {
  std::size_t first = 0;
  std::size_t last = 0;
};
KnotRange knot_support(std::span<const double> knots, double q, AxisMethod method);

SampleResult sample(const FlowGrid& grid, double x, double y, double z, double t,
                    const InterpScheme& scheme);

struct SamplePoint {
  double x = 0.0, y = 0.0, z = 0.0, t = 0.0;
};

/// Batch query.  The parallel kernel uses OpenMP; the serial kernel is the
/// reference it is tested against.
std::vector<SampleResult> sample_batch_serial(const FlowGrid& grid,
                                              std::span<const SamplePoint> points,
                                              const InterpScheme& scheme);
std::vector<SampleResult> sample_batch(const FlowGrid& grid,
                                       std::span<const SamplePoint> points,
                                       const InterpScheme& scheme);

// --- Gridded Flow Archive -------------------------------------------------

enum class FlowEncoding { inline_text, binary };

FlowGrid load_flow_grid(const std::string& path);
FlowGrid parse_flow_grid(std::string_view contents);
void save_flow_grid(const FlowGrid& grid, const std::string& path,
                    FlowEncoding encoding = FlowEncoding::inline_text);
std::string serialize_flow_grid(const FlowGrid& grid,
                                FlowEncoding encoding = FlowEncoding::inline_text);

// --- Synthetic fields -----------------------------------------------------

enum class SynthKind { uniform, gyre, tidal_channel };

SynthKind parse_synth_kind(std::string_view name);

struct GridDims {
  std::size_t nx = 21, ny = 21, nz = 3, nt = 5;
  double x_extent = 100'000.0;  // m
  double y_extent = 100'000.0;  // m
  double z_max = 200.0;         // m, deepest level
  double t_start = 0.0;         // s
  double duration = 864'000.0;  // s, last t-step minus first
};

struct SynthParams {
  // uniform
  double u0 = 0.1, v0 = 0.0;
  // gyre: peak speed, oscillation amplitude epsilon, period, e-folding depth
  double amplitude = 0.2;
  double epsilon = 0.1;
  double period = 43'200.0;
  double decay_depth = 0.0;  // <= 0 disables depth decay
  // additive noise, deterministic in seed
  double noise = 0.0;
  unsigned seed = 1;
  struct Island {
    double x, y, radius;
  };
  std::vector<Island> islands;
};

FlowGrid synth_field(SynthKind kind, const SynthParams& params, const GridDims& dims);

}  // namespace glider
