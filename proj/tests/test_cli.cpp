#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "process.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kExe = GLIDERPLAN_EXE;

fs::path scratch_dir() {
  const auto* info = testing::UnitTest::GetInstance()->current_test_info();
  auto dir = fs::temp_directory_path() /
             (std::string("glider_cli_") + info->test_suite_name() + "_" + info->name());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

process::Result cli(const std::string& args) { return process::run(process::quote(kExe) + " " + args); }

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string p(const fs::path& path) { return process::quote(path.string()); }

}  // namespace

TEST(Cli, SynthThenSampleUniform) {
  const auto dir = scratch_dir();
  auto r = cli("synth uniform --out " + p(dir / "u.json") + " --u0 0.25 --v0 -0.1");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("shape: [5][3][21][21]"), std::string::npos) << r.output;
  r = cli("sample " + p(dir / "u.json") + " --x 12345 --y 67890 --z 77 --t 1000");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("status: ok"), std::string::npos);
  EXPECT_NE(r.output.find("u: 0.250000000"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("v: -0.100000000"), std::string::npos) << r.output;
}

TEST(Cli, BinarySynthSamplesLikeInline) {
  const auto dir = scratch_dir();
  ASSERT_EQ(cli("synth gyre --out " + p(dir / "a.json")).exit_code, 0);
  ASSERT_EQ(cli("synth gyre --binary --out " + p(dir / "b.json")).exit_code, 0);
  const auto a = cli("sample " + p(dir / "a.json") + " --x 30000 --y 40000");
  const auto b = cli("sample " + p(dir / "b.json") + " --x 30000 --y 40000");
  ASSERT_EQ(a.exit_code, 0) << a.output;
  ASSERT_EQ(b.exit_code, 0) << b.output;
  // float32 storage: agree to about 1e-7 m/s.
  const auto la = lines(a.output), lb = lines(b.output);
  ASSERT_GE(la.size(), 4u);
  ASSERT_GE(lb.size(), 4u);
  EXPECT_NEAR(std::stod(la[2].substr(3)), std::stod(lb[2].substr(3)), 1e-6);
  EXPECT_NEAR(std::stod(la[3].substr(3)), std::stod(lb[3].substr(3)), 1e-6);
}

TEST(Cli, SampleOnLandAndOutsideExitsTwo) {
  const auto dir = scratch_dir();
  ASSERT_EQ(cli("synth uniform --island 50000,50000,10000 --out " + p(dir / "i.json")).exit_code, 0);
  auto r = cli("sample " + p(dir / "i.json") + " --x 50000 --y 50000");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("land contact"), std::string::npos) << r.output;
  r = cli("sample " + p(dir / "i.json") + " --x -10 --y 50000");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("out of domain"), std::string::npos) << r.output;
}

TEST(Cli, SampleSchemesDiffer) {
  const auto dir = scratch_dir();
  ASSERT_EQ(cli("synth gyre --out " + p(dir / "g.json")).exit_code, 0);
  const std::string where = " --x 31234 --y 47321 --t 5000";
  const auto n = cli("sample " + p(dir / "g.json") + where + " --xy nearest");
  const auto c = cli("sample " + p(dir / "g.json") + where + " --xy bicubic --t-method akima");
  ASSERT_EQ(n.exit_code, 0);
  ASSERT_EQ(c.exit_code, 0);
  EXPECT_NE(n.output.find("scheme: nearest/linear/linear"), std::string::npos) << n.output;
  EXPECT_NE(c.output.find("scheme: bicubic/linear/akima"), std::string::npos) << c.output;
  EXPECT_NE(lines(n.output)[2], lines(c.output)[2]);
  const auto bad = cli("sample " + p(dir / "g.json") + where + " --xy spline");
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_NE(bad.output.find("error:"), std::string::npos);
}

TEST(Cli, PlanWritesThreeFiles) {
  const auto dir = scratch_dir();
  ASSERT_EQ(cli("synth gyre --out " + p(dir / "g.json")).exit_code, 0);
  write_text(dir / "m.json", R"({"name": "trial", "flow_file": "g.json",
      "start": [10000, 20000], "goal": [85000, 75000], "grid_spacing": 8000})");
  const auto r = cli("plan " + p(dir / "m.json") + " --out " + p(dir / "out"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  for (const char* f : {"trial.waypoints.json", "trial.svg", "trial.summary.txt"})
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  EXPECT_NE(r.output.find("comp_time_s:"), std::string::npos);
  EXPECT_EQ(r.output.find(read_text(dir / "out" / "trial.summary.txt")), 0u);
  const auto again = cli("plan " + p(dir / "m.json") + " --out " + p(dir / "out2"));
  ASSERT_EQ(again.exit_code, 0);
  EXPECT_EQ(read_text(dir / "out" / "trial.waypoints.json"),
            read_text(dir / "out2" / "trial.waypoints.json"));
  EXPECT_EQ(read_text(dir / "out" / "trial.svg"), read_text(dir / "out2" / "trial.svg"));
}

TEST(Cli, PlanImpassableExitsTwo) {
  const auto dir = scratch_dir();
  ASSERT_EQ(cli("synth uniform --u0 -0.8 --out " + p(dir / "f.json")).exit_code, 0);
  write_text(dir / "m.json", R"({"name": "upstream", "flow_file": "f.json",
      "start": [10000, 50000], "goal": [90000, 50000]})");
  const auto r = cli("plan " + p(dir / "m.json") + " --out " + p(dir));
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("infeasible"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "upstream.waypoints.json"));
}

TEST(Cli, PlanMissingFlowFileExitsOne) {
  const auto dir = scratch_dir();
  write_text(dir / "m.json", R"({"flow_file": "nowhere.json", "start": [1, 1], "goal": [5, 5]})");
  const auto r = cli("plan " + p(dir / "m.json") + " --out " + p(dir));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("nowhere.json"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("error:"), std::string::npos);
}

TEST(Cli, SweepKeepsRequestedOrder) {
  const auto dir = scratch_dir();
  ASSERT_EQ(cli("synth gyre --out " + p(dir / "g.json")).exit_code, 0);
  write_text(dir / "m.json", R"({"name": "sw", "flow_file": "g.json",
      "start": [10000, 20000], "goal": [85000, 75000], "grid_spacing": 10000})");
  const auto r = cli("sweep " + p(dir / "m.json") + " --vary vehicle_speed --values 0.35,0.25,0.3");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto l = lines(r.output);
  ASSERT_EQ(l.size(), 7u) << r.output;
  EXPECT_EQ(l[0], "sweep: vehicle_speed");
  EXPECT_EQ(l[2], "rows: 3");
  EXPECT_EQ(l[3].rfind("value\tstatus\t", 0), 0u);
  EXPECT_EQ(l[4].rfind("0.35\t", 0), 0u);
  EXPECT_EQ(l[5].rfind("0.25\t", 0), 0u);
  EXPECT_EQ(l[6].rfind("0.3\t", 0), 0u);

  const auto one = cli("sweep " + p(dir / "m.json") + " --vary vehicle_speed --values 0.3");
  EXPECT_EQ(one.exit_code, 1);
  const auto bad = cli("sweep " + p(dir / "m.json") + " --vary vehicle_speed --values 0.3,fast");
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_NE(bad.output.find("fast"), std::string::npos);
  EXPECT_EQ(bad.output.find("value\t"), std::string::npos);
}
