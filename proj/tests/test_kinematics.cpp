#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "glider/kinematics.hpp"
#include "glider/mission.hpp"
#include "support.hpp"

using namespace glider;
using gtest_support::grid_from;
using gtest_support::linspace;
using gtest_support::uniform_grid;

namespace {

const VehicleSpec kSpeed03{0.3};

}  // namespace

// --- effective speed --------------------------------------------------------

TEST(EffectiveSpeed, Examples) {
  EXPECT_DOUBLE_EQ(*effective_speed(kSpeed03, {0, 0}, {1, 0, 0}), 0.3);
  EXPECT_DOUBLE_EQ(*effective_speed(kSpeed03, {0.1, 0}, {1, 0, 0}), 0.4);
  EXPECT_NEAR(*effective_speed(kSpeed03, {0, 0.18}, {1, 0, 0}), std::sqrt(0.09 - 0.0324),
              1e-15);
  EXPECT_NEAR(*effective_speed(kSpeed03, {0, 0.18}, {1, 0, 0}), 0.24, 1e-15);
  EXPECT_FALSE(effective_speed(kSpeed03, {-0.4, 0}, {1, 0, 0}).has_value());
}

TEST(EffectiveSpeed, FeasibilityBoundaries) {
  EXPECT_FALSE(effective_speed(kSpeed03, {-0.3 * 1.01, 0}, {1, 0, 0}).has_value());
  const auto ok = effective_speed(kSpeed03, {-0.3 * 0.99, 0}, {1, 0, 0});
  ASSERT_TRUE(ok.has_value());
  EXPECT_NEAR(*ok, 0.003, 1e-12);
  // Cross current equal to the speed leaves zero headway.
  EXPECT_FALSE(effective_speed(kSpeed03, {0, 0.3}, {1, 0, 0}).has_value());
}

TEST(EffectiveSpeed, RejectsNonUnitDirection) {
  EXPECT_THROW(effective_speed(kSpeed03, {0, 0}, {1.1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(effective_speed(kSpeed03, {0, 0}, {0, 0, 0}), std::invalid_argument);
}

TEST(EffectiveSpeed, RotationInvariant) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> c(-0.35, 0.35), ang(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 1000; ++i) {
    const CurrentVector cur{c(rng), c(rng)};
    const double a = ang(rng), rot = ang(rng);
    const Vec3 d{std::cos(a), std::sin(a), 0};
    const double cr = std::cos(rot), sr = std::sin(rot);
    const CurrentVector cur_r{cr * cur.u - sr * cur.v, sr * cur.u + cr * cur.v};
    const Vec3 d_r{cr * d.x - sr * d.y, sr * d.x + cr * d.y, 0};
    const auto v1 = effective_speed(kSpeed03, cur, d);
    const auto v2 = effective_speed(kSpeed03, cur_r, d_r);
    ASSERT_EQ(v1.has_value(), v2.has_value()) << i;
    if (v1) EXPECT_NEAR(*v1, *v2, 1e-9);
  }
}

TEST(EffectiveSpeed, MatchesVectorClosure) {
  // Heading h (|h| = speed) plus current must point along the track.
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> c(-0.2, 0.2), ang(0, 2 * std::numbers::pi);
  for (int i = 0; i < 500; ++i) {
    const CurrentVector cur{c(rng), c(rng)};
    const double a = ang(rng);
    const Vec3 d{std::cos(a), std::sin(a), 0};
    const auto v = effective_speed(kSpeed03, cur, d);
    ASSERT_TRUE(v.has_value());
    const double hx = *v * d.x - cur.u, hy = *v * d.y - cur.v;
    EXPECT_NEAR(std::hypot(hx, hy), 0.3, 1e-12);
  }
}

// --- straight legs ----------------------------------------------------------

TEST(TravelTime, ZeroCurrentStraightLineFigures) {
  const auto g = uniform_grid(0, 0, 250'000);
  const FlowField field{&g, {}};
  const double t1 = travel_time({0, 0, 0}, {210'000, 0, 0}, 0, field, kSpeed03);
  const double t2 = travel_time({0, 0, 0}, {210'550, 0, 0}, 0, field, kSpeed03);
  EXPECT_NEAR(t1, 700'000, 1e-6);
  EXPECT_NEAR(t2, 701'833.333333, 1e-3);
  EXPECT_EQ(format_duration(t1), "08:02:26:40");
  EXPECT_EQ(format_duration(t2), "08:02:57:13");
}

TEST(TravelTime, SlantLeg) {
  const auto g = uniform_grid(0, 0, 1000, 500);
  const FlowField field{&g, {}};
  EXPECT_NEAR(travel_time({0, 0, 0}, {400, 0, 300}, 0, field, VehicleSpec{0.25}), 2000, 1e-9);
}

TEST(TravelTime, ZeroCurrentIsLengthOverSpeed) {
  const auto g = uniform_grid(0, 0, 10'000, 300);
  const FlowField field{&g, {XYMethod::bicubic, AxisMethod::akima, AxisMethod::cubic}};
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> xy(0, 10'000), z(0, 300);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a{xy(rng), xy(rng), z(rng)}, b{xy(rng), xy(rng), z(rng)};
    const double want = (b - a).norm() / 0.3;
    EXPECT_LE(std::fabs(travel_time(a, b, 0, field, kSpeed03, 1 + i % 7) - want), 1e-9 * want);
  }
}

TEST(TravelTime, TidalSubstepsAgreeWithFineOracle) {
  SynthParams p;
  p.amplitude = 0.2;
  p.period = 43'200;
  GridDims d;
  d.nt = 193;
  d.duration = 2 * 86'400;
  d.x_extent = 20'000;
  d.y_extent = 20'000;
  const auto g = synth_field(SynthKind::tidal_channel, p, d);
  const FlowField field{&g, {XYMethod::bilinear, AxisMethod::linear, AxisMethod::cubic}};
  // Entry-time sampling is first order in the piece duration: a 160 m dive
  // leg stays within 1% at every tidal phase.
  for (int k = 0; k < 48; ++k) {
    const double t0 = k * 900.0;
    const double coarse = travel_time({1000, 500, 0}, {1150, 550, 20}, t0, field, kSpeed03, 8);
    const double fine = travel_time({1000, 500, 0}, {1150, 550, 20}, t0, field, kSpeed03, 4096);
    ASSERT_TRUE(is_feasible(coarse) && is_feasible(fine));
    EXPECT_LT(std::fabs(coarse - fine), 0.01 * fine) << t0;
  }
  // Longer legs converge to the fine oracle as n_sub grows.
  for (double t0 : {0.0, 5'000.0, 17'000.0, 30'000.0}) {
    const Vec3 a{1000, 500, 0}, b{3000, 1000, 50};
    const double fine = travel_time(a, b, t0, field, kSpeed03, 4096);
    double prev = kInfeasible;
    for (int n : {8, 32, 128}) {
      const double err = std::fabs(travel_time(a, b, t0, field, kSpeed03, n) - fine);
      EXPECT_LT(err, prev) << t0 << " n=" << n;
      prev = err;
    }
    EXPECT_LT(prev, 0.01 * fine);
  }
}

TEST(TravelTime, OpposingCurrentMonotoneThenInfeasible) {
  double prev = 0;
  for (double c : {0.0, 0.05, 0.1, 0.2, 0.29}) {
    const auto g = uniform_grid(-c, 0, 5'000);
    const FlowField field{&g, {}};
    const double t = travel_time({0, 0, 0}, {4'000, 0, 0}, 0, field, kSpeed03);
    EXPECT_GE(t, prev);
    prev = t;
  }
  for (double factor : {1.01, 2.0}) {
    const auto g = uniform_grid(-0.3 * factor, 0, 5'000);
    const FlowField field{&g, {}};
    EXPECT_EQ(travel_time({0, 0, 0}, {4'000, 0, 0}, 0, field, kSpeed03), kInfeasible);
  }
  const auto g = uniform_grid(-0.3 * 0.99, 0, 5'000);
  const FlowField field{&g, {}};
  EXPECT_NEAR(travel_time({0, 0, 0}, {4'000, 0, 0}, 0, field, kSpeed03), 4'000 / 0.003, 1e-6);
}

TEST(TravelTime, LeavingGridOrLandIsInfeasible) {
  SynthParams p;
  p.u0 = 0;
  p.islands.push_back({50'000, 50'000, 5'000});
  const auto g = synth_field(SynthKind::uniform, p, {});
  const FlowField field{&g, {}};
  EXPECT_EQ(travel_time({40'000, 50'000, 0}, {60'000, 50'000, 0}, 0, field, kSpeed03),
            kInfeasible);
  EXPECT_EQ(travel_time({90'000, 0, 0}, {110'000, 0, 0}, 0, field, kSpeed03), kInfeasible);
  EXPECT_EQ(travel_time({0, 0, 0}, {100, 0, 0}, kInfeasible, field, kSpeed03), kInfeasible);
}

// --- dive profiles ----------------------------------------------------------

TEST(GliderTravelTime, QuarterStepSlantSum) {
  const auto g = uniform_grid(0, 0, 2'000);
  const FlowField field{&g, {}};
  EXPECT_EQ(segment_count(0.25), 4u);
  const double want = 4 * std::sqrt(300.0 * 300.0 + 100.0 * 100.0) / 0.3;
  const double got = glider_travel_time({0, 0}, {1200, 0}, {10, 110}, 0, 0.25, field, kSpeed03);
  EXPECT_NEAR(got, want, 1e-9);
  EXPECT_NEAR(got, 4216.37, 0.005);
}

TEST(GliderTravelTime, UnitStepIsOneLeg) {
  SynthParams p;
  const auto g = synth_field(SynthKind::gyre, p, {});
  const FlowField field{&g, {}};
  const double a = glider_travel_time({10'000, 20'000}, {30'000, 25'000}, {10, 150}, 3'600, 1.0,
                                      field, kSpeed03);
  const double b = travel_time({10'000, 20'000, 10}, {30'000, 25'000, 150}, 3'600, field, kSpeed03);
  EXPECT_EQ(a, b);
  EXPECT_EQ(segment_count(1.0), 1u);
  EXPECT_EQ(segment_count(0.3), 4u);
  EXPECT_EQ(segment_count(0.1), 10u);
}

TEST(GliderTravelTime, InfiniteStartPropagates) {
  const auto g = uniform_grid(0, 0, 2'000);
  const FlowField field{&g, {}};
  EXPECT_EQ(glider_travel_time({0, 0}, {100, 0}, {0, 100}, kInfeasible, 0.25, field, kSpeed03),
            kInfeasible);
}

TEST(GliderTravelTime, StationaryFieldIgnoresStartTime) {
  SynthParams p;
  p.epsilon = 0;
  p.noise = 0.01;
  GridDims d;
  d.nt = 1;
  const auto g = synth_field(SynthKind::gyre, p, d);
  const FlowField field{&g, {XYMethod::bicubic, AxisMethod::akima, AxisMethod::akima}};
  const double a = glider_travel_time({5'000, 5'000}, {40'000, 30'000}, {0, 200}, 0, 0.25, field,
                                      kSpeed03);
  for (double t : {1.0, 1e4, 5e5}) {
    EXPECT_EQ(glider_travel_time({5'000, 5'000}, {40'000, 30'000}, {0, 200}, t, 0.25, field,
                                 kSpeed03),
              a);
  }
}

TEST(DiveProfiles, SingleCombination) {
  ProfileFamilySpec s{5, 95, 5, 20, 1, 1};
  const auto p = make_dive_profiles(s);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], (DiveProfile{5, 95}));
}

TEST(DiveProfiles, FilteredCrossProduct) {
  ProfileFamilySpec s{0, 100, 30, 40, 2, 2};
  const auto p = make_dive_profiles(s);
  const std::vector<DiveProfile> want{{0, 40}, {0, 100}, {30, 100}};
  EXPECT_EQ(p, want);
}

TEST(DiveProfiles, ImpossibleAmplitudeRejected) {
  ProfileFamilySpec s{0, 100, 0, 150, 1, 1};
  EXPECT_THROW(make_dive_profiles(s), ConfigError);
  ProfileFamilySpec bad{0, 100, 120, 10, 1, 1};
  EXPECT_THROW(make_dive_profiles(bad), ConfigError);
}

TEST(DiveProfiles, TwelveProfileFamily) {
  ProfileFamilySpec s{0, 200, 40, 50, 3, 5};
  const auto p = make_dive_profiles(s);
  EXPECT_EQ(p.size(), 12u);
  for (const auto& d : p) EXPECT_GE(d.amplitude(), 50 - 1e-12);
}

// --- optimal profile --------------------------------------------------------

namespace {

// Still water down to 50 m, a following current below.
FlowGrid layered_grid(double deep_u) {
  return grid_from(linspace(0, 20'000, 5), linspace(0, 20'000, 5), {0, 50, 100, 200}, {0, 1e6},
                   [=](double, double, double z, double) {
                     return CurrentVector{z <= 50 ? 0.0 : deep_u, 0.0};
                   });
}

}  // namespace

TEST(OptimalProfile, SingletonIsGliderTime) {
  const auto g = layered_grid(0.1);
  const FlowField field{&g, {}};
  const std::vector<DiveProfile> one{{0, 100}};
  ProfileCostOptions o;
  const auto c = optimal_profile_cost({1000, 1000}, {9000, 3000}, 0, one, o, field, kSpeed03);
  EXPECT_EQ(c.index, 0u);
  EXPECT_EQ(c.time, glider_travel_time({1000, 1000}, {9000, 3000}, one[0], 0, o.h, field, kSpeed03));
}

TEST(OptimalProfile, DeepFavourableCurrentChosen) {
  const auto g = layered_grid(0.2);
  const FlowField field{&g, {}};
  const std::vector<DiveProfile> profiles{{0, 50}, {0, 200}, {100, 200}, {0, 100}};
  ProfileCostOptions o;
  const auto c = optimal_profile_cost({1000, 1000}, {15'000, 1000}, 0, profiles, o, field, kSpeed03);
  // Exhaustive evaluation.
  double best = kInfeasible;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const double t = glider_travel_time({1000, 1000}, {15'000, 1000}, profiles[i], 0, o.h, field,
                                        kSpeed03);
    if (t < best) {
      best = t;
      arg = i;
    }
  }
  EXPECT_EQ(c.time, best);
  EXPECT_EQ(c.index, arg);
  EXPECT_EQ(c.profile, (DiveProfile{100, 200}));
}

TEST(OptimalProfile, AllOpposedIsInfeasible) {
  const auto g = uniform_grid(-0.6, 0, 20'000);
  const FlowField field{&g, {}};
  const std::vector<DiveProfile> profiles{{0, 50}, {0, 200}};
  const auto c = optimal_profile_cost({1000, 1000}, {9000, 1000}, 0, profiles, {}, field, kSpeed03);
  EXPECT_EQ(c.time, kInfeasible);
  EXPECT_EQ(c.index, kNoProfile);
}

TEST(OptimalProfile, SelectionRules) {
  const std::vector<DiveProfile> p{{0, 50}, {0, 100}, {10, 60}, {0, 200}};
  // Ties go to the larger amplitude.
  std::vector<double> t{100, 100, 150, 130};
  auto c = select_profile(p, t, CostMode::fastest, 1.1);
  EXPECT_EQ(c.index, 1u);
  // max_amplitude: largest amplitude within slack of the fastest.
  c = select_profile(p, t, CostMode::max_amplitude, 1.1);
  EXPECT_EQ(c.index, 1u);
  c = select_profile(p, t, CostMode::max_amplitude, 1.3);
  EXPECT_EQ(c.index, 3u);
  EXPECT_EQ(c.time, 130);
  // Equal amplitude ties keep list order.
  const std::vector<DiveProfile> q{{0, 50}, {10, 60}};
  const std::vector<double> tq{80, 80};
  EXPECT_EQ(select_profile(q, tq, CostMode::fastest, 1.1).index, 0u);
  // Infeasible entries are ignored.
  const std::vector<double> ti{kInfeasible, 120, kInfeasible, kInfeasible};
  EXPECT_EQ(select_profile(p, ti, CostMode::max_amplitude, 2.0).index, 1u);
}

TEST(OptimalProfile, FastestIsExhaustiveMinimum) {
  SynthParams sp;
  sp.noise = 0.03;
  sp.decay_depth = 80;
  const auto g = synth_field(SynthKind::gyre, sp, {});
  const FlowField field{&g, {XYMethod::bicubic, AxisMethod::akima, AxisMethod::linear}};
  const auto profiles = make_dive_profiles({0, 200, 40, 50, 3, 5});
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> xy(5'000, 95'000), t(0, 800'000);
  ProfileCostOptions o;
  for (int i = 0; i < 20; ++i) {
    const Vec2 a{xy(rng), xy(rng)}, b{xy(rng), xy(rng)};
    const double t0 = t(rng);
    const auto c = optimal_profile_cost(a, b, t0, profiles, o, field, kSpeed03);
    double best = kInfeasible;
    for (const auto& p : profiles) {
      best = std::min(best, glider_travel_time(a, b, p, t0, o.h, field, kSpeed03));
    }
    EXPECT_EQ(c.time, best);
  }
}

TEST(OptimalProfile, ParallelEqualsSerial) {
  SynthParams sp;
  sp.noise = 0.03;
  const auto g = synth_field(SynthKind::gyre, sp, {});
  const FlowField field{&g, {XYMethod::bicubic, AxisMethod::cubic, AxisMethod::akima}};
  const auto profiles = make_dive_profiles({0, 200, 40, 50, 3, 5});
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> xy(5'000, 95'000), t(0, 800'000);
  ProfileCostOptions o;
  for (int i = 0; i < 20; ++i) {
    const Vec2 a{xy(rng), xy(rng)}, b{xy(rng), xy(rng)};
    const double t0 = t(rng);
    const auto s = evaluate_profiles_serial(a, b, t0, profiles, o, field, kSpeed03);
    const auto p = evaluate_profiles_parallel(a, b, t0, profiles, o, field, kSpeed03);
    EXPECT_EQ(s, p);
    ProfileCostOptions os = o;
    os.execution = Execution::serial;
    const auto cs = optimal_profile_cost(a, b, t0, profiles, os, field, kSpeed03);
    const auto cp = optimal_profile_cost(a, b, t0, profiles, o, field, kSpeed03);
    EXPECT_EQ(cs.time, cp.time);
    EXPECT_EQ(cs.index, cp.index);
  }
}
