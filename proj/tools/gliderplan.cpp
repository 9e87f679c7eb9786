// gliderplan: plan, sample, synth, sweep.
//
// Exit codes: 0 success, 1 error (bad input, I/O), 2 infeasible / no answer
// (impassable mission, query outside the grid or on land).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glider/flowfield.hpp"
#include "glider/mission.hpp"

namespace {

using namespace glider;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

std::string num(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct PlanArgs {
  std::string mission;
  std::string out = ".";
  bool no_smooth = false;
  std::optional<double> svg_depth;
  std::optional<double> svg_time;
};

int cmd_plan(const PlanArgs& a) {
  const MissionSpec spec = parse_mission(a.mission);
  const FlowGrid grid = load_flow_grid(spec.flow_file);

  const auto t0 = std::chrono::steady_clock::now();
  RunOptions options;
  options.smooth = !a.no_smooth;
  const MissionResult result = run_mission(spec, grid, options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::filesystem::create_directories(a.out);
  const auto base = std::filesystem::path(a.out) / spec.name;
  const std::string wp_path = base.string() + ".waypoints.json";
  const std::string svg_path = base.string() + ".svg";
  const std::string summary_path = base.string() + ".summary.txt";

  SvgOptions svg;
  svg.depth = a.svg_depth.value_or(spec.resolved_profiles().z_min);
  svg.time = a.svg_time.value_or(spec.start_time);
  export_waypoints(spec, result, wp_path);
  write_svg(spec, result, grid, svg, svg_path);
  const std::string summary = mission_summary(spec, result);
  {
    std::ofstream out(summary_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write summary file '" + summary_path + "'");
    out << summary;
  }

  std::cout << summary;
  std::cout << "comp_time_s: " << num(seconds, 3) << "\n";
  std::cout << "waypoint_file: " << wp_path << "\n";
  std::cout << "svg_file: " << svg_path << "\n";
  std::cout << "summary_file: " << summary_path << "\n";
  return result.status == MissionStatus::ok ? kExitOk : kExitInfeasible;
}

struct SampleArgs {
  std::string flow;
  double x = 0, y = 0, z = 0, t = 0;
  std::string xy = "bilinear", zm = "linear", tm = "linear";
};

int cmd_sample(const SampleArgs& a) {
  const FlowGrid grid = load_flow_grid(a.flow);
  InterpScheme scheme{parse_xy_method(a.xy), parse_axis_method(a.zm), parse_axis_method(a.tm)};
  const auto s = sample(grid, a.x, a.y, a.z, a.t, scheme);
  std::cout << "scheme: " << to_string(scheme.xy) << "/" << to_string(scheme.z) << "/"
            << to_string(scheme.t) << "\n";
  switch (s.status) {
    case SampleStatus::out_of_domain:
      std::cout << "status: out of domain\n";
      return kExitInfeasible;
    case SampleStatus::land:
      std::cout << "status: land contact\n";
      return kExitInfeasible;
    case SampleStatus::ok:
      break;
  }
  std::cout << "status: ok\n";
  std::cout << "u: " << num(s.current.u, 9) << "\n";
  std::cout << "v: " << num(s.current.v, 9) << "\n";
  std::cout << "magnitude: " << num(s.current.magnitude(), 9) << "\n";
  return kExitOk;
}

struct SynthArgs {
  std::string kind;
  std::string out;
  GridDims dims;
  SynthParams params;
  std::vector<std::string> islands;
  bool binary = false;
};

int cmd_synth(SynthArgs a) {
  for (const auto& s : a.islands) {
    SynthParams::Island isl{};
    char extra = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &isl.x, &isl.y, &isl.radius, &extra) != 3) {
      throw ConfigError("--island expects x,y,radius (got '" + s + "')");
    }
    a.params.islands.push_back(isl);
  }
  const FlowGrid grid = synth_field(parse_synth_kind(a.kind), a.params, a.dims);
  save_flow_grid(grid, a.out, a.binary ? FlowEncoding::binary : FlowEncoding::inline_text);
  std::cout << "status: ok\n";
  std::cout << "kind: " << a.kind << "\n";
  std::cout << "shape: [" << grid.nt() << "][" << grid.nz() << "][" << grid.ny() << "]["
            << grid.nx() << "]\n";
  std::cout << "out: " << a.out << "\n";
  return kExitOk;
}

struct SweepArgs {
  std::string mission;
  std::string vary;
  std::vector<std::string> values;
  bool no_smooth = false;
};

void apply_sweep_value(MissionSpec& spec, const std::string& var, const std::string& value) {
  auto as_number = [&](const std::string& v) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size()) throw ConfigError("sweep: '" + v + "' is not a number");
    return d;
  };
  try {
    if (var == "xy_method") {
      spec.scheme.xy = parse_xy_method(value);
    } else if (var == "zt_method") {
      spec.scheme.z = parse_axis_method(value);
      spec.scheme.t = spec.scheme.z;
    } else if (var == "grid_spacing") {
      spec.grid_spacing = as_number(value);
    } else if (var == "vehicle_speed") {
      spec.vehicle.speed_through_water = as_number(value);
    } else {
      throw ConfigError("sweep: unknown variable '" + var +
                        "' (xy_method, zt_method, grid_spacing, vehicle_speed)");
    }
  } catch (const FlowError& e) {
    throw ConfigError(std::string("sweep: ") + e.what());
  }
}

int cmd_sweep(const SweepArgs& a) {
  if (a.values.size() < 2) throw ConfigError("sweep: at least two values are required");
  const MissionSpec base = parse_mission(a.mission);
  const FlowGrid grid = load_flow_grid(base.flow_file);

  // Validate every value before running anything.
  std::vector<MissionSpec> specs;
  for (const auto& v : a.values) {
    MissionSpec spec = base;
    apply_sweep_value(spec, a.vary, v);
    spec.resolve(grid);
    specs.push_back(std::move(spec));
  }

  std::cout << "sweep: " << a.vary << "\n";
  std::cout << "mission: " << base.name << "\n";
  std::cout << "rows: " << specs.size() << "\n";
  std::cout << "value\tstatus\ttravel_time\ttravel_time_s\tpath_length_km\twaypoints_unsmoothed"
               "\twaypoints_smoothed\tstraight_line\tcomp_time_s\n";
  RunOptions options;
  options.smooth = !a.no_smooth;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const MissionResult r = run_mission(specs[i], grid, options);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = r.status == MissionStatus::ok;
    std::cout << a.values[i] << "\t" << (ok ? "ok" : "infeasible") << "\t"
              << (ok ? format_duration(r.smoothed.total_time) : "impassable") << "\t"
              << (ok ? num(r.smoothed.total_time, 3) : "inf") << "\t"
              << (ok ? num(r.smoothed.total_length / 1000.0, 2) : "nan") << "\t"
              << (ok ? r.planned.waypoints.size() : 0) << "\t"
              << (ok ? r.smoothed.waypoints.size() : 0) << "\t"
              << format_duration(r.straight_line.time) << "\t" << num(secs, 3) << "\n";
  }
  return kExitOk;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-optimal glider route planning in time-varying ocean currents"};
  app.require_subcommand(1);

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Plan, smooth and export a mission");
  plan_cmd->add_option("mission", plan.mission, "Mission file")->required();
  plan_cmd->add_option("--out", plan.out, "Output directory");
  plan_cmd->add_flag("--no-smooth", plan.no_smooth, "Skip path smoothing");
  plan_cmd->add_option("--svg-depth", plan.svg_depth, "Depth of the plotted currents (m)");
  plan_cmd->add_option("--svg-time", plan.svg_time, "Time of the plotted currents (s)");

  SampleArgs smp;
  auto* sample_cmd = app.add_subcommand("sample", "Interpolate the current at one point");
  sample_cmd->add_option("flow", smp.flow, "Flow file")->required();
  sample_cmd->add_option("--x", smp.x, "x (m)")->required();
  sample_cmd->add_option("--y", smp.y, "y (m)")->required();
  sample_cmd->add_option("--z", smp.z, "depth (m)");
  sample_cmd->add_option("--t", smp.t, "time (s)");
  sample_cmd->add_option("--xy", smp.xy, "nearest|bilinear|bicubic");
  sample_cmd->add_option("--z-method", smp.zm, "nearest|linear|cubic|akima");
  sample_cmd->add_option("--t-method", smp.tm, "nearest|linear|cubic|akima");

  SynthArgs syn;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic flow file");
  synth_cmd->add_option("kind", syn.kind, "uniform|gyre|tidal_channel")->required();
  synth_cmd->add_option("--out", syn.out, "Output flow file")->required();
  synth_cmd->add_option("--nx", syn.dims.nx);
  synth_cmd->add_option("--ny", syn.dims.ny);
  synth_cmd->add_option("--nz", syn.dims.nz);
  synth_cmd->add_option("--nt", syn.dims.nt);
  synth_cmd->add_option("--x-extent", syn.dims.x_extent, "m");
  synth_cmd->add_option("--y-extent", syn.dims.y_extent, "m");
  synth_cmd->add_option("--z-max", syn.dims.z_max, "deepest level (m)");
  synth_cmd->add_option("--t-start", syn.dims.t_start, "first time step (s)");
  synth_cmd->add_option("--duration", syn.dims.duration, "last minus first time step (s)");
  synth_cmd->add_option("--u0", syn.params.u0, "uniform east component (m/s)");
  synth_cmd->add_option("--v0", syn.params.v0, "uniform north component (m/s)");
  synth_cmd->add_option("--amplitude", syn.params.amplitude, "gyre/tidal amplitude (m/s)");
  synth_cmd->add_option("--epsilon", syn.params.epsilon, "gyre oscillation amplitude");
  synth_cmd->add_option("--period", syn.params.period, "gyre/tidal period (s)");
  synth_cmd->add_option("--decay-depth", syn.params.decay_depth, "e-folding depth (m), 0 = none");
  synth_cmd->add_option("--noise", syn.params.noise, "uniform noise amplitude (m/s)");
  synth_cmd->add_option("--seed", syn.params.seed, "noise seed");
  synth_cmd->add_option("--island", syn.islands, "land disk x,y,radius (repeatable)");
  synth_cmd->add_flag("--binary", syn.binary, "binary float32 encoding");

  SweepArgs swp;
  std::string sweep_values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a mission across parameter values");
  sweep_cmd->add_option("mission", swp.mission, "Mission file")->required();
  sweep_cmd->add_option("--vary", swp.vary, "xy_method|zt_method|grid_spacing|vehicle_speed")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
  sweep_cmd->add_flag("--no-smooth", swp.no_smooth, "Skip path smoothing");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan_cmd) return cmd_plan(plan);
    if (*sample_cmd) return cmd_sample(smp);
    if (*synth_cmd) return cmd_synth(syn);
    if (*sweep_cmd) {
      swp.values = split_csv(sweep_values);
      return cmd_sweep(swp);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
