#include "rmopt/cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rmopt::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rmopt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

const char* kSmallSphereConfig = R"(n_pop = 4
n_des = 5
n_maxmut = 2
p_max = 1
n_stall = 20
seed = 3
)";

}  // namespace

TEST_F(CliTest, DiscordBellDiagonalAnalytical) {
  const Outcome o = run({"discord", "--bell-diagonal", "0,0,0", "--analytical", "--restarts", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["analytical"]["D"].get<double>(), 0.0);
  EXPECT_NEAR(j["discord"].get<double>(), 0.0, 1e-9);
}

TEST_F(CliTest, DiscordMatchesAnalyticalForBellPair) {
  const Outcome o = run({"discord", "--bell-diagonal", "1,1,-1", "--analytical", "--restarts", "2",
                         "--out", path("d.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_NEAR(j["discord"].get<double>(), 1.0, 1e-6);
  EXPECT_LT(j["abs_error"].get<double>(), 1e-6);
  std::ifstream in(path("d.json"));
  EXPECT_EQ(json::parse(in), j);
}

TEST_F(CliTest, DiscordFromDensityFileAndSideA) {
  const std::string rho = write("rho.json", R"({"dim_a": 2, "dim_b": 2, "rows": [
    [[0.5, 0], [0, 0], [0, 0], [0.5, 0]],
    [[0, 0], [0, 0], [0, 0], [0, 0]],
    [[0, 0], [0, 0], [0, 0], [0, 0]],
    [[0.5, 0], [0, 0], [0, 0], [0.5, 0]]]})");
  for (const char* side : {"A", "B"}) {
    const Outcome o = run({"discord", "--density", rho, "--side", side, "--restarts", "1"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NEAR(json::parse(o.out)["discord"].get<double>(), 1.0, 1e-6);
  }
}

TEST_F(CliTest, DiscordInputErrors) {
  EXPECT_EQ(run({"discord"}).code, 1);
  EXPECT_EQ(run({"discord", "--bell-diagonal", "1,1"}).code, 1);
  EXPECT_EQ(run({"discord", "--bell-diagonal", "1,1,1"}).code, 2);
  EXPECT_EQ(run({"discord", "--bell-diagonal", "0,0,0", "--side", "C"}).code, 1);
  const std::string bad = write("bad.json", R"({"dim_a": 1, "dim_b": 2, "rows": [
    [[0.5, 0], [0.5, 0]], [[0.5, 0], [-0.5, 0]]]})");
  EXPECT_EQ(run({"discord", "--density", bad}).code, 2);
}

TEST_F(CliTest, GenStateThenHmin) {
  const Outcome g = run({"gen-state", "--kind", "ghz", "--n", "2", "--l0", "1", "--l1", "1", "--out",
                         path("ghz2.json")});
  ASSERT_EQ(g.code, 0) << g.err;
  const Outcome h = run({"hmin", "--state", path("ghz2.json"), "--restarts", "2"});
  ASSERT_EQ(h.code, 0) << h.err;
  const json j = json::parse(h.out);
  EXPECT_NEAR(j["value"].get<double>(), 1.0, 1e-5);
  EXPECT_EQ(j["params"].size(), 2u);
}

TEST_F(CliTest, GenStateKinds) {
  for (const char* kind : {"product", "grover", "random"}) {
    const Outcome o = run({"gen-state", "--kind", kind, "--n", "3", "--out", path("s.json")});
    EXPECT_EQ(o.code, 0) << kind << o.err;
  }
  EXPECT_EQ(run({"gen-state", "--kind", "w", "--out", path("s.json")}).code, 1);
  EXPECT_EQ(run({"gen-state", "--kind", "ghz", "--l0", "0", "--l1", "0", "--out", path("s.json")}).code,
            2);
}

TEST_F(CliTest, BenchWritesJsonAndTrace) {
  const std::string cfg = write("sphere.cfg", kSmallSphereConfig);
  const Outcome o = run({"bench", "--problem", "rastrigin", "--n", "2", "--config", cfg, "--trace",
                         path("trace.csv"), "--out", path("r.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["n_exp"].get<int>(), 1);
  EXPECT_EQ(j["config"]["n_params"].get<int>(), 2);
  EXPECT_EQ(j["config"]["v_min"].get<double>(), -5.12);
  std::ifstream trace(path("trace.csv"));
  std::string header;
  std::getline(trace, header);
  EXPECT_EQ(header, "generation,evaluations,best_fitness");
}

TEST_F(CliTest, RunsAreByteIdentical) {
  const std::string cfg = write("sphere.cfg", kSmallSphereConfig);
  const std::vector<std::string> args = {"bench", "--problem", "griewank", "--n", "3", "--config",
                                         cfg, "--n-exp", "3"};
  const Outcome a = run(args);
  std::vector<std::string> parallel = args;
  parallel.insert(parallel.begin(), {"--workers", "3"});
  const Outcome b = run(parallel);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);

  const std::vector<std::string> d = {"discord", "--bell-diagonal", "0.3,-0.2,0.1", "--restarts", "2"};
  EXPECT_EQ(run(d).out, run(d).out);
}

TEST_F(CliTest, E05OnPlateau) {
  const std::string cfg = std::string(RMOPT_SOURCE_DIR) + "/configs/plateau.cfg";
  const std::vector<std::string> args = {"e05", "--problem", "plateau", "--config", cfg, "--n-exp", "40",
                                         "--reference", "-1.374680702401224", "--threshold", "1e-3"};
  const Outcome o = run(args);
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_GT(j["n_err"].get<int>(), 0);
  EXPECT_LT(j["n_err"].get<int>(), 40);
  EXPECT_TRUE(std::isfinite(j["e_05"].get<double>()));
  EXPECT_EQ(run(args).out, o.out);
}

TEST_F(CliTest, E05UndefinedMetricExitCode) {
  const std::string cfg = write("sphere.cfg", kSmallSphereConfig);
  const Outcome o = run({"e05", "--problem", "rastrigin", "--n", "2", "--config", cfg, "--n-exp", "2",
                         "--reference", "1e9", "--threshold", "1"});
  EXPECT_EQ(o.code, 3);
  EXPECT_TRUE(json::parse(o.out)["e_05"].is_null());
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"bench", "--problem", "rastrigin", "--bogus"}).code, 1);
  EXPECT_EQ(run({"bench", "--problem", "ackley"}).code, 1);
  EXPECT_EQ(run({"bench", "--problem", "rastrigin", "--config", path("missing.cfg")}).code, 1);
  const std::string cfg = write("bad.cfg", "n_pop = 0\n");
  EXPECT_EQ(run({"bench", "--problem", "rastrigin", "--config", cfg}).code, 1);
  EXPECT_EQ(run({"hmin", "--state", path("missing.json")}).code, 1);
  EXPECT_EQ(run({"e05", "--problem", "plateau", "--reference", "0"}).code, 1);
}

TEST_F(CliTest, HelpExitsCleanly) {
  const Outcome o = run({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("discord"), std::string::npos);
}
