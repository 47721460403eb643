// Runs the rdacert executable end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#ifndef RDACERT_BIN
#error "RDACERT_BIN must name the rdacert executable"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CmdResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rdacert_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  CmdResult run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && '" RDACERT_BIN "' " + args + " > '" + out.string() +
                            "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    CmdResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

constexpr const char* kStable = R"({"model":"gray-scott","a":0.06,"b":0.04,"d":6,"v1":0,"v2":0})";
constexpr const char* kTuring = R"({"model":"gray-scott","a":0.06,"b":0.055,"d":6,"v1":0,"v2":0})";
constexpr const char* kFlow = R"({"model":"gray-scott","a":0.06,"b":0.04,"d":6,"v1":1.897,"v2":0.3162})";

TEST_F(CliTest, AnalyzeVerdicts) {
  write("stable.json", kStable);
  write("turing.json", kTuring);
  CmdResult r = run("analyze stable.json");
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "stable");
  EXPECT_TRUE(doc.contains("oracle"));
  EXPECT_TRUE(doc.contains("calibration_scalar"));

  r = run("analyze turing.json");
  ASSERT_EQ(r.code, 0) << r.err;
  doc = json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "unstable");
  EXPECT_EQ(doc["witness"]["minor"], 2);
}

TEST_F(CliTest, ToleranceFlagsAreEchoed) {
  write("stable.json", kStable);
  const CmdResult r = run("analyze stable.json --eps-psd 1e-7 --dead-band 1e-9 --eps-res-abs 1e-10");
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["tolerances"]["eps_psd"], 1e-7);
  EXPECT_EQ(doc["tolerances"]["dead_band"], 1e-9);
  EXPECT_EQ(doc["tolerances"]["eps_res_abs"], 1e-10);
  EXPECT_EQ(run("analyze stable.json --eps-psd -1").code, 2);
}

TEST_F(CliTest, InputErrorsExitTwo) {
  write("bad.json", "{\n  \"model\": \"gray-scott\",\n  \"a\": 0.06 \"b\": 1\n}");
  CmdResult r = run("analyze bad.json");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;

  write("unknown.json", R"({"model":"gray-scott","a":0.06,"b":0.04,"d":6,"speed":1})");
  EXPECT_EQ(run("analyze unknown.json").code, 2);
  EXPECT_EQ(run("analyze missing.json").code, 2);
  EXPECT_EQ(run("analyze").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("band unknown.json --resolution -1").code, 2);
}

TEST_F(CliTest, CertifyCheck) {
  write("stable.json", kStable);
  ASSERT_EQ(run("analyze stable.json --certificates -o report.json").code, 0);
  CmdResult r = run("certify-check report.json");
  EXPECT_EQ(r.code, 0) << r.out;

  json doc = json::parse(slurp(dir_ / "report.json"));
  auto& g = doc["minors"][1]["feasibility"]["certificate"]["G"];
  g[1][1] = g[1][1].get<double>() * 1.01;
  write("tampered.json", doc.dump());
  r = run("certify-check tampered.json");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("fail"), std::string::npos);

  write("garbage.json", "not json");
  EXPECT_EQ(run("certify-check garbage.json").code, 2);
}

TEST_F(CliTest, BandWithModes) {
  write("flow.json", kFlow);
  write("stable.json", kStable);
  CmdResult r = run("band flow.json --modes 30pi --verbose");
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  ASSERT_EQ(doc["bands"].size(), 1u);
  EXPECT_EQ(doc["bands"][0]["modes"], json({2, 3}));
  EXPECT_GE(doc["bands"][0]["lo"].get<double>(), 0.10);
  EXPECT_LE(doc["bands"][0]["hi"].get<double>(), 0.25);
  EXPECT_FALSE(doc["transcript"].empty());

  r = run("band stable.json");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["bands"].empty());
  EXPECT_EQ(run("band flow.json --modes nope").code, 2);
}

TEST_F(CliTest, SweepIsDeterministic) {
  write("sweep.json", R"({
    "base": {"a":0.06,"b":0.04,"d":6,"v":0.3162}, "coupling": "stokes_einstein",
    "axes": [{"name":"a","lo":0.02,"hi":0.12,"n":4},{"name":"b","lo":0.02,"hi":0.07,"n":4}],
    "outputs": {"csv":"one.csv","map":"map.csv","json":"one.json"}})");
  ASSERT_EQ(run("sweep sweep.json --threads 1").code, 0);
  ASSERT_EQ(run("sweep sweep.json --threads 3 --csv two.csv").code, 0);
  EXPECT_EQ(slurp(dir_ / "one.csv"), slurp(dir_ / "two.csv"));
  const std::string map = slurp(dir_ / "map.csv");
  EXPECT_NE(map.find("a\\b"), std::string::npos);
  const json doc = json::parse(slurp(dir_ / "one.json"));
  EXPECT_EQ(doc["cells"].size(), 16u);

  write("bad_sweep.json", R"({"base":{"a":0.06,"b":0.04,"d":6},"axes":[{"name":"zz","values":[1]}]})");
  EXPECT_EQ(run("sweep bad_sweep.json").code, 2);
}

TEST_F(CliTest, Simulate) {
  write("sim.json", R"({"params":{"a":0.06,"b":0.04,"d":6},"N":128,"t_end":20,"dt":0.5,"snapshot_every":10,
    "outputs":{"csv":"traj.csv","spacetime_c2":"st2.csv"}})");
  const CmdResult r = run("simulate sim.json");
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["frames"].size(), 5u);
  EXPECT_TRUE(fs::exists(dir_ / "traj.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "st2.csv"));

  write("bad_sim.json", R"({"params":{"a":0.06,"b":0.04,"d":6},"N":100})");
  EXPECT_EQ(run("simulate bad_sim.json").code, 2);
}

TEST_F(CliTest, Version) {
  const CmdResult r = run("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}

}  // namespace
