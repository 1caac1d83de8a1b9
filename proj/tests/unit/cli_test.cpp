#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace voltroute::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(const std::vector<std::string>& args, int expected_code = kExitOk) {
  const Outcome o = invoke(args);
  EXPECT_EQ(o.code, expected_code) << o.err << o.out;
  return json::parse(o.out);
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("voltroute_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

bool check_ok(const json& rep, const std::string& name) {
  for (const json& c : rep["checks"]) {
    if (c["name"] == name) return c["ok"].get<bool>();
  }
  ADD_FAILURE() << "no check named " << name;
  return false;
}

TEST(Cli, GenGluedPaths) {
  const Outcome o = invoke({"gen", "--kind", "glued-paths", "--k", "3"});
  EXPECT_EQ(o.code, kExitOk);
  std::istringstream lines(o.out);
  int n = 0, m = 0;
  lines >> n >> m;
  EXPECT_EQ(n, 8);
  EXPECT_EQ(m, 10);
}

TEST_F(CliFiles, CutsOnP3) {
  const std::string g = write("p3.txt", "3 2\n0 1 1.0\n1 2 1.0\n");
  const json rep = report({"cuts", "--graph", g, "--s", "0", "--t", "2"});
  EXPECT_EQ(rep["command"], "cuts");
  for (const json& cut : rep["result"]["cuts"]) {
    if (cut["n"].get<int>() > 0) EXPECT_NEAR(cut["flow_sum"].get<double>(), 1.0, 1e-9);
  }
  EXPECT_TRUE(rep["ok"].get<bool>());
}

TEST_F(CliFiles, WalkTriangle) {
  const std::string g = write("tri.txt", "3 3\n0 1 1.0\n0 2 1.0\n1 2 1.0\n");
  const json rep = report({"walk", "--graph", g, "--s", "0", "--t", "1", "--enumerate"});
  const json& paths = rep["result"]["paths"];
  ASSERT_EQ(paths.size(), 2u);
  std::vector<double> probs;
  for (const json& p : paths) probs.push_back(p["probability"].get<double>());
  std::sort(probs.begin(), probs.end());
  EXPECT_NEAR(probs[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(probs[1], 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(check_ok(rep, "enumeration_total"));
  EXPECT_TRUE(check_ok(rep, "edge_marginals"));
}

TEST(Cli, WalkSamples) {
  const json rep = report({"walk", "--kind", "random-regular", "--n", "12", "--s", "0", "--t", "5",
                           "--samples", "20000", "--seed", "3"});
  EXPECT_TRUE(check_ok(rep, "mean_length_within_3_sigma"));
  EXPECT_EQ(rep["result"]["monte_carlo"]["sink_arrival_frequency"].get<double>(), 1.0);
}

TEST(Cli, BoundK2) {
  const json rep = report({"bound", "--kind", "path", "--n", "2"});
  EXPECT_DOUBLE_EQ(rep["result"]["competitive_bound"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(rep["result"]["lplus_one_one_norm"].get<double>(), 0.5);
  EXPECT_TRUE(rep["result"]["eta_expansion_bound"]["degenerate"].get<bool>());
}

TEST(Cli, BoundC4AndGluedPaths) {
  const json c4 = report({"bound", "--kind", "cycle", "--n", "4"});
  EXPECT_LE(c4["result"]["competitive_bound"].get<double>(),
            c4["result"]["eta_expansion_bound"]["value"].get<double>());
  const json glued = report({"bound", "--kind", "glued-paths", "--k", "4"});
  EXPECT_GE(glued["result"]["competitive_bound"].get<double>(), 2.0 - 1e-9);
}

TEST(Cli, NormsFlowCongestion) {
  const json norms = report({"norms", "--kind", "random-connected", "--n", "9", "--m", "16",
                             "--min-weight", "0.5", "--max-weight", "3", "--seed", "4"});
  EXPECT_TRUE(norms["ok"].get<bool>());
  const json flow = report({"flow", "--kind", "cycle", "--n", "4", "--s", "0", "--t", "2"});
  EXPECT_TRUE(flow["ok"].get<bool>());
  const json cong = report({"congestion", "--kind", "complete", "--n", "3"});
  EXPECT_NEAR(cong["result"]["congestion"].get<double>(), 4.0 / 3.0, 1e-12);
}

TEST_F(CliFiles, CongestionFromDemandFile) {
  const std::string g = write("p3.txt", "3 2\n0 1 1.0\n1 2 1.0\n");
  const std::string d = write("d.txt", "3 1\n1 0 -1\n");
  const json rep = report({"congestion", "--graph", g, "--demands", d});
  EXPECT_NEAR(rep["result"]["congestion"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, RobustAndSimulate) {
  const json robust = report({"robust", "--kind", "random-regular", "--n", "12", "--s", "0", "--t",
                              "6", "--p", "0.1", "0.5", "--x", "0.1", "--seeds", "3", "--seed", "2"});
  EXPECT_TRUE(robust["ok"].get<bool>());
  const json sim = report({"simulate", "--kind", "cycle", "--n", "4", "--k", "10"});
  EXPECT_TRUE(sim["ok"].get<bool>());
  EXPECT_EQ(sim["result"]["accounting"]["rounds"].get<int>(), 11);
  EXPECT_EQ(sim["result"]["accounting"]["messages"].get<int>(), 88);
  const json sym = report({"simulate", "--kind", "random-regular", "--n", "10", "--eps", "1e-8",
                           "--symmetrized"});
  EXPECT_TRUE(sym["ok"].get<bool>());
}

TEST_F(CliFiles, OutFileAndDeterminism) {
  const std::vector<std::string> args{"walk", "--kind", "random-regular", "--n", "10",
                                      "--s", "0", "--t", "3", "--samples", "500", "--seed", "9",
                                      "--enumerate", "--out", path("a.json")};
  EXPECT_EQ(invoke(args).code, kExitOk);
  std::vector<std::string> again = args;
  again.back() = path("b.json");
  EXPECT_EQ(invoke(again).code, kExitOk);
  auto load = [](const std::string& p) {
    std::ifstream in(p);
    json j = json::parse(in);
    j.erase("timestamp");
    j["config"].erase("argv");
    j["config"]["options"].erase("--out");
    return j.dump();
  };
  EXPECT_EQ(load(path("a.json")), load(path("b.json")));
}

TEST(Cli, ConfigEchoed) {
  const json rep = report({"bound", "--kind", "cycle", "--n", "5", "--seed", "17"});
  EXPECT_EQ(rep["config"]["options"]["--seed"], "17");
  EXPECT_EQ(rep["config"]["argv"][0], "bound");
  EXPECT_TRUE(rep.contains("timestamp"));
}

TEST_F(CliFiles, FailedBoundExitsOne) {
  const std::string g = write("c4.txt", "4 4\n0 1 1.0\n1 2 1.0\n2 3 1.0\n0 3 1.0\n");
  const json rep = report({"cuts", "--graph", g, "--s", "0", "--t", "2", "--alpha", "3"},
                          kExitBoundFailed);
  EXPECT_FALSE(rep["ok"].get<bool>());
}

TEST_F(CliFiles, ErrorsExitTwo) {
  const std::string bad = write("bad.txt", "2 1\n0 0 1.0\n");
  Outcome o = invoke({"norms", "--graph", bad});
  EXPECT_EQ(o.code, kExitError);
  EXPECT_NE(o.err.find("line 2"), std::string::npos);

  o = invoke({"norms", "--graph", path("missing.txt")});
  EXPECT_EQ(o.code, kExitError);
  o = invoke({"walk", "--kind", "path", "--n", "3", "--s", "0", "--t", "9"});
  EXPECT_EQ(o.code, kExitError);
  o = invoke({"bogus"});
  EXPECT_EQ(o.code, kExitError);
  o = invoke({"norms"});
  EXPECT_EQ(o.code, kExitError);
  o = invoke({"gen", "--kind", "random-regular", "--n", "7", "--d", "3"});
  EXPECT_EQ(o.code, kExitError);
}

}  // namespace
}  // namespace voltroute::cli
