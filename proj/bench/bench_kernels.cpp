// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "glider/kinematics.hpp"
#include "glider/mission.hpp"

using namespace glider;

namespace {

const FlowGrid& gyre() {
  static const FlowGrid grid = [] {
    SynthParams p;
    p.amplitude = 0.1;
    p.decay_depth = 300;
    GridDims d;
    d.nx = d.ny = 41;
    d.nz = 5;
    d.nt = 41;
    return synth_field(SynthKind::gyre, p, d);
  }();
  return grid;
}

const std::vector<DiveProfile>& profiles() {
  static const auto list = make_dive_profiles({0, 200, 40, 50, 3, 5});
  return list;
}

std::vector<SamplePoint> points(std::size_t n) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> xy(0, 100'000), z(0, 200), t(0, 864'000);
  std::vector<SamplePoint> out(n);
  for (auto& p : out) p = {xy(rng), xy(rng), z(rng), t(rng)};
  return out;
}

template <bool Parallel>
void BM_Profiles(benchmark::State& state) {
  const FlowField field{&gyre(), {XYMethod::bicubic, AxisMethod::akima, AxisMethod::cubic}};
  const VehicleSpec veh{0.3};
  ProfileCostOptions opt;
  for (auto _ : state) {
    auto times = Parallel
                     ? evaluate_profiles_parallel({10'000, 20'000}, {14'000, 23'000}, 3'600,
                                                  profiles(), opt, field, veh)
                     : evaluate_profiles_serial({10'000, 20'000}, {14'000, 23'000}, 3'600,
                                                profiles(), opt, field, veh);
    benchmark::DoNotOptimize(times.data());
  }
  state.counters["threads"] = profile_threads();
}
BENCHMARK(BM_Profiles<false>)->Name("profiles/serial");
BENCHMARK(BM_Profiles<true>)->Name("profiles/parallel");

template <bool Parallel>
void BM_SampleBatch(benchmark::State& state) {
  const auto pts = points(static_cast<std::size_t>(state.range(0)));
  const InterpScheme scheme{XYMethod::bicubic, AxisMethod::akima, AxisMethod::cubic};
  for (auto _ : state) {
    auto r = Parallel ? sample_batch(gyre(), pts, scheme) : sample_batch_serial(gyre(), pts, scheme);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleBatch<false>)->Name("sample_batch/serial")->Arg(10'000);
BENCHMARK(BM_SampleBatch<true>)->Name("sample_batch/parallel")->Arg(10'000);

void BM_Mission(benchmark::State& state) {
  auto spec = parse_mission_text(R"({"flow_file": "f", "start": [8000, 15000],
      "goal": [92000, 85000], "grid_spacing": 4000,
      "profiles": {"z_min": 0, "z_max": 200, "z_climb_to_max": 40, "z_min_range": 50,
                   "n_climb_to_levels": 3, "n_dive_to_levels": 5}})",
                                 ".");
  RunOptions opt;
  opt.execution = state.range(0) ? Execution::parallel : Execution::serial;
  for (auto _ : state) benchmark::DoNotOptimize(run_mission(spec, gyre(), opt).smoothed.total_time);
}
BENCHMARK(BM_Mission)->Name("mission")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
