// Copyright 2026 The dfpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dfpsim_cli/commands.h"
#include "dfpsim_cli/config.h"
#include "dfpsim/error.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace dfpsim::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dfpsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Run(std::vector<std::string> args) {
    args.insert(args.begin(), "dfpsim");
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  static std::string Slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

const std::vector<std::string> kSmall = {"--agents", "4",      "--targets",      "4",
                                         "--steps",  "200",    "--reps",         "3",
                                         "--seed",   "7",      "--record-every", "10"};

std::vector<std::string> With(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

TEST_F(CliTest, RunWritesTraceAndSummary) {
  ASSERT_EQ(Run(With({"run", "--protocol", "vl1", "--out-dir", dir_.string()}, kSmall)), kExitOk)
      << err_.str();
  const std::string csv = Slurp(dir_ / "trace.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "step,mean_dist_ne,mean_belief_err,link_utilization,coverage");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 21);
  const auto summary = nlohmann::json::parse(Slurp(dir_ / "trace_summary.json"));
  EXPECT_EQ(summary["replications"], 3);
  EXPECT_EQ(summary["config"]["protocol"], "vl1");
  EXPECT_EQ(summary["config"]["rho"], "0.6");
}

TEST_F(CliTest, RerunIsByteIdentical) {
  const auto args = With({"run", "--protocol", "vl2", "--out-dir", dir_.string()}, kSmall);
  ASSERT_EQ(Run(args), kExitOk);
  const std::string first = Slurp(dir_ / "trace.csv");
  ASSERT_EQ(Run(args), kExitOk);
  EXPECT_EQ(Slurp(dir_ / "trace.csv"), first);
  ASSERT_EQ(Run(With(args, {"--jobs", "3"})), kExitOk);
  EXPECT_EQ(Slurp(dir_ / "trace.csv"), first);
}

TEST_F(CliTest, ConfigFileAndFlagsLayer) {
  std::ofstream(dir_ / "exp.cfg") << "# small\nprotocol = vl3\nn_agents = 4\nn_targets = 4\n"
                                  << "t_final = 50\nreplications = 2\nepsilon = 0.2\n";
  ASSERT_EQ(Run({"run", "--config", (dir_ / "exp.cfg").string(), "--epsilon", "0.25",
                 "--out-dir", dir_.string()}),
            kExitOk)
      << err_.str();
  const auto summary = nlohmann::json::parse(Slurp(dir_ / "trace_summary.json"));
  EXPECT_EQ(summary["config"]["protocol"], "vl3");
  EXPECT_EQ(summary["config"]["epsilon"], "0.25");
  EXPECT_EQ(summary["config"]["rho"], "0.4");
}

TEST_F(CliTest, BadConfigExitsTwo) {
  EXPECT_EQ(Run({"run", "--protocol", "vl7", "--out-dir", dir_.string()}), kExitBadConfig);
  EXPECT_EQ(Run({"run", "--p-comm", "1.5", "--out-dir", dir_.string()}), kExitBadConfig);
  EXPECT_EQ(Run({"run", "--rho", "0", "--out-dir", dir_.string()}), kExitBadConfig);
  EXPECT_EQ(Run({"run", "--eta1", "0.7", "--eta2", "0.6", "--out-dir", dir_.string()}),
            kExitBadConfig);
  std::ofstream(dir_ / "bad.cfg") << "no_such_key = 3\n";
  EXPECT_EQ(Run({"run", "--config", (dir_ / "bad.cfg").string()}), kExitBadConfig);
  EXPECT_FALSE(err_.str().empty());
  EXPECT_FALSE(fs::exists(dir_ / "trace.csv"));
}

TEST_F(CliTest, CheckNeCapacityExitsThree) {
  EXPECT_EQ(Run({"check-ne", "--agents", "8", "--targets", "8"}), kExitCapacity);
}

TEST_F(CliTest, CheckNeReportsBijections) {
  ASSERT_EQ(Run({"check-ne", "--agents", "3", "--targets", "3", "--seed", "2"}), kExitOk);
  const std::string text = out_.str();
  EXPECT_NE(text.find("pure_ne: 6\n"), std::string::npos);
  EXPECT_NE(text.find("weakly_acyclic: true\n"), std::string::npos);
  EXPECT_NE(text.find("assumption1: true\n"), std::string::npos);
}

TEST_F(CliTest, CheckNeOnGameFile) {
  std::ofstream(dir_ / "pennies.game") << "n_agents 2\nn_actions 2\n"
                                       << "u 0 00 1\nu 0 01 -1\nu 0 10 -1\nu 0 11 1\n"
                                       << "u 1 00 -1\nu 1 01 1\nu 1 10 1\nu 1 11 -1\n";
  ASSERT_EQ(Run({"check-ne", "--game-file", (dir_ / "pennies.game").string()}), kExitOk);
  EXPECT_NE(out_.str().find("pure_ne: 0\n"), std::string::npos);
  EXPECT_NE(out_.str().find("weakly_acyclic: false\n"), std::string::npos);
  EXPECT_EQ(Run({"check-ne", "--game-file", (dir_ / "missing.game").string()}), kExitBadConfig);
}

TEST_F(CliTest, SinglePointSweepMatchesRun) {
  const auto common = With({"--protocol", "vl1", "--out-dir", dir_.string()}, kSmall);
  ASSERT_EQ(Run(With({"run"}, common)), kExitOk);
  ASSERT_EQ(Run(With({"sweep", "--grid", "eta1=0.01"}, common)), kExitOk) << err_.str();
  EXPECT_EQ(Slurp(dir_ / "eta1-0.01.csv"), Slurp(dir_ / "trace.csv"));
}

TEST_F(CliTest, SweepWritesOneFilePerPointAndAManifest) {
  const auto common = With({"--protocol", "vl1", "--out-dir", dir_.string()}, kSmall);
  ASSERT_EQ(Run(With({"sweep", "--grid", "eta1=0.001,0.01", "--grid", "eta2=0.5,0.9"}, common)),
            kExitOk)
      << err_.str();
  const auto manifest = nlohmann::json::parse(Slurp(dir_ / "manifest.json"));
  ASSERT_EQ(manifest["points"].size(), 4u);
  for (const auto& p : manifest["points"]) {
    EXPECT_TRUE(fs::exists(dir_ / p["csv"].get<std::string>()));
    EXPECT_TRUE(fs::exists(dir_ / p["summary"].get<std::string>()));
  }
  EXPECT_TRUE(fs::exists(dir_ / "eta1-0.001_eta2-0.9.csv"));
}

TEST_F(CliTest, SweepRejectsBadPointsBeforeRunning) {
  const auto common = With({"--protocol", "vl1", "--out-dir", dir_.string()}, kSmall);
  EXPECT_EQ(Run(With({"sweep", "--grid", "eta1=0.01,0.9"}, common)), kExitBadConfig);
  EXPECT_FALSE(fs::exists(dir_ / "eta1-0.01.csv"));
  EXPECT_EQ(Run(With({"sweep"}, common)), kExitBadConfig);
  EXPECT_EQ(Run(With({"sweep", "--grid", "t_final=1,2"}, common)), kExitBadConfig);
}

TEST_F(CliTest, ExtrasOnRequest) {
  ASSERT_EQ(Run(With({"run", "--protocol", "dfp", "--per-replication", "--dump-state", "--out-dir",
                      dir_.string()},
                     kSmall)),
            kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "trace_replications" / "rep_0002.csv"));
  std::ifstream states(dir_ / "trace_states.jsonl");
  std::string line;
  int lines = 0;
  while (std::getline(states, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("own_freq"));
    ++lines;
  }
  EXPECT_EQ(lines, 12);
}

TEST_F(CliTest, LinkMatrixFromFile) {
  std::ofstream(dir_ / "p.txt") << "0 1 1\n1 0 1\n1 1 0\n";
  ASSERT_EQ(Run({"run", "--protocol", "dfp", "--agents", "3", "--targets", "3", "--steps", "5",
                 "--reps", "1", "--p-comm", (dir_ / "p.txt").string(), "--beta-ack", "1",
                 "--out-dir", dir_.string()}),
            kExitOk)
      << err_.str();
  const auto summary = nlohmann::json::parse(Slurp(dir_ / "trace_summary.json"));
  EXPECT_EQ(summary["successes_total"], 30);
  std::ofstream(dir_ / "short.txt") << "0 1\n1 0\n";
  EXPECT_EQ(Run({"run", "--agents", "3", "--targets", "3", "--p-comm",
                 (dir_ / "short.txt").string(), "--out-dir", dir_.string()}),
            kExitBadConfig);
}

TEST(ResolveTest, NoneDisablesAThreshold) {
  Settings s = DefaultSettings();
  s["protocol"] = "vl1";
  s["eta2"] = "none";
  const Resolved r = Resolve(s);
  EXPECT_FALSE(r.sim.protocol.eta2.has_value());
  EXPECT_EQ(r.sim.protocol.eta1, 0.01);
}

TEST(ResolveTest, CustomProtocolNeedsDynamics) {
  Settings s = DefaultSettings();
  s["protocol"] = "custom";
  EXPECT_THROW(Resolve(s), Error);
  s["rho"] = "0.2";
  s["epsilon"] = "0.5";
  EXPECT_NO_THROW(Resolve(s));
}

TEST(ResolveTest, ParseRejectsMalformedLines) {
  EXPECT_THROW(ParseConfigText("rho 0.2\n", "inline"), Error);
  EXPECT_EQ(ParseConfigText("rho = 0.2  # comment\n\n", "inline").at("rho"), "0.2");
}

}  // namespace
}  // namespace dfpsim::cli
