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

#include "dfpsim/engine.h"

#include <cmath>

#include "dfpsim/error.h"
#include "dfpsim/metrics.h"
#include "dfpsim/oracle.h"
#include "gtest/gtest.h"

namespace dfpsim {
namespace {

SimConfig PresetConfig(const std::string& name, std::size_t n, std::int64_t steps,
                       std::uint64_t seed = 0) {
  const auto preset = Preset(name);
  SimConfig cfg;
  cfg.game = GeneratedTargets{n, n};
  cfg.protocol = preset.protocol;
  cfg.rho = preset.rho;
  cfg.epsilon = preset.epsilon;
  cfg.links = LinkModel::Uniform(n, 0.6, 0.9);
  cfg.t_final = steps;
  cfg.seed = seed;
  return cfg;
}

TEST(MakeWorldTest, ExplicitProfileWithPointMassBeliefs) {
  auto cfg = PresetConfig("vl1", 3, 1);
  cfg.initial.profile = std::vector<ActionIndex>{2, 0, 1};
  cfg.initial.point_mass_beliefs = true;
  const World w = MakeWorld(cfg, 0);
  ASSERT_EQ(w.agents.size(), 3u);
  EXPECT_EQ(w.agents[0].last_action(), 2u);
  EXPECT_EQ(w.agents[0].own_freq(), MixedStrategy::PointMass(3, 2));
  EXPECT_EQ(w.agents[0].estimate(1), MixedStrategy::PointMass(3, 0));
  EXPECT_EQ(w.agents[2].estimate(0), MixedStrategy::PointMass(3, 2));
  EXPECT_EQ(w.agents[1].second_order(2), MixedStrategy::PointMass(3, 0));
}

TEST(MakeWorldTest, RandomStartDependsOnSeedAndReplication) {
  const auto cfg = PresetConfig("dfp", 8, 1, 5);
  auto profile = [](const World& w) {
    std::vector<ActionIndex> p;
    for (const auto& a : w.agents) p.push_back(a.last_action());
    return p;
  };
  EXPECT_EQ(profile(MakeWorld(cfg, 2)), profile(MakeWorld(cfg, 2)));
  EXPECT_NE(profile(MakeWorld(cfg, 2)), profile(MakeWorld(cfg, 3)));
  const World w = MakeWorld(cfg, 0);
  EXPECT_EQ(w.agents[0].own_freq(), MixedStrategy::Uniform(8));
}

TEST(InertiaTest, FullInertiaKeepsActionAndSkipsTieDraw) {
  const GameSpec game(TargetAssignmentGame(2, 2, {1, 1, 1, 1}));
  const AgentState s(0, 2, 2, 1);
  RngStream inertia(1);
  RngStream ties(2);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(BestResponseWithInertia(s, game, 1.0, inertia, ties), 1u);
  }
  EXPECT_EQ(inertia.draws(), 100u);
  EXPECT_EQ(ties.draws(), 0u);
}

TEST(InertiaTest, NoInertiaPicksUniqueBestResponse) {
  const GameSpec game(TargetAssignmentGame(2, 2, {1, 3, 1, 1}));
  AgentState s(0, 2, 2, 1);
  RngStream inertia(1);
  RngStream ties(2);
  bool tie = true;
  EXPECT_EQ(BestResponseWithInertia(s, game, 0.0, inertia, ties, &tie), 0u);
  EXPECT_FALSE(tie);
  s.set_estimate(1, MixedStrategy::PointMass(2, 0));
  EXPECT_EQ(BestResponseWithInertia(s, game, 0.0, inertia, ties), 1u);
  EXPECT_EQ(ties.draws(), 0u);
}

TEST(InertiaTest, ExactTiesSplitEvenly) {
  const GameSpec game(TargetAssignmentGame(2, 2, {2, 2, 1, 1}));
  const AgentState s(0, 2, 2, 0);
  RngStream inertia(3);
  RngStream ties(4);
  int ones = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    bool tie = false;
    ones += BestResponseWithInertia(s, game, 0.0, inertia, ties, &tie) == 1u;
    ASSERT_TRUE(tie);
  }
  EXPECT_NEAR(static_cast<double>(ones) / trials, 0.5, 0.02);
  EXPECT_EQ(ties.draws(), static_cast<std::uint64_t>(trials));
}

TEST(InertiaTest, KeepFrequencyMatchesEpsilon) {
  const GameSpec game(TargetAssignmentGame(2, 2, {1, 3, 1, 1}));
  const AgentState s(0, 2, 2, 1);
  RngStream inertia(5);
  RngStream ties(6);
  int kept = 0;
  const int trials = 50000;
  for (int i = 0; i < trials; ++i) kept += BestResponseWithInertia(s, game, 0.3, inertia, ties) == 1u;
  EXPECT_NEAR(static_cast<double>(kept) / trials, 0.3, 0.01);
}

TEST(StepTest, DrawsPerStreamMatchStepStatistics) {
  for (const char* name : {"dfp", "vl1", "vl2", "vl3"}) {
    const auto cfg = PresetConfig(name, 6, 0, 3);
    World w = MakeWorld(cfg, 0);
    std::uint64_t inertia = 0, ties = 0, links = 0, acks = 0;
    for (std::int64_t t = 1; t <= 300; ++t) {
      const StepStats s = RunStep(w, cfg, t);
      inertia += 6;
      ties += static_cast<std::uint64_t>(s.tie_breaks);
      links += static_cast<std::uint64_t>(s.attempts);
      acks += static_cast<std::uint64_t>(s.deliveries);
      ASSERT_LE(s.deliveries, s.attempts);
      ASSERT_LE(s.acks, s.deliveries);
      ASSERT_EQ(w.inertia_rng.draws(), inertia) << name << " t=" << t;
      ASSERT_EQ(w.tie_break_rng.draws(), ties) << name << " t=" << t;
      ASSERT_EQ(w.link_rng.draws(), links) << name << " t=" << t;
      ASSERT_EQ(w.ack_rng.draws(), acks) << name << " t=" << t;
    }
  }
}

TEST(StepTest, FrozenActionsConsumeNoActionDraws) {
  auto cfg = PresetConfig("vl1", 5, 0);
  cfg.freeze_actions = true;
  World w = MakeWorld(cfg, 0);
  std::vector<ActionIndex> before;
  for (const auto& a : w.agents) before.push_back(a.last_action());
  for (std::int64_t t = 1; t <= 50; ++t) EXPECT_EQ(RunStep(w, cfg, t).action_changes, 0);
  EXPECT_EQ(w.inertia_rng.draws(), 0u);
  EXPECT_EQ(w.tie_break_rng.draws(), 0u);
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(w.agents[i].last_action(), before[i]);
}

TEST(StepTest, DfpUsesEveryLinkEveryStep) {
  const auto cfg = PresetConfig("dfp", 7, 0);
  World w = MakeWorld(cfg, 0);
  for (std::int64_t t = 1; t <= 20; ++t) EXPECT_EQ(RunStep(w, cfg, t).attempts, 42);
}

TEST(StepTest, ForcedDeliveryAlignsAllBeliefs) {
  for (bool store_reconstruction : {false, true}) {
    auto cfg = PresetConfig("dfp", 5, 0);
    cfg.links = LinkModel::Uniform(5, 1.0, 1.0);
    cfg.second_order_stores_reconstruction = store_reconstruction;
    World w = MakeWorld(cfg, 0);
    for (std::int64_t t = 1; t <= 10; ++t) {
      const StepStats s = RunStep(w, cfg, t);
      EXPECT_EQ(s.deliveries, 20);
      EXPECT_EQ(s.acks, 20);
      EXPECT_EQ(BeliefDisagreement(w.agents), 0.0);
      for (const AgentState& a : w.agents) {
        for (AgentId j = 0; j < 5; ++j) {
          if (j != a.id()) EXPECT_EQ(BeliefSimilarity(a, j), 0.0);
        }
      }
    }
  }
}

TEST(StepTest, LimitedPayloadAckStoresReconstructionWhenAsked) {
  auto cfg = PresetConfig("vl3", 3, 0);
  cfg.links = LinkModel::Uniform(3, 1.0, 1.0);
  cfg.second_order_stores_reconstruction = true;
  cfg.protocol.reconstruction = ReconstructionRule::kFullSupport;
  World w = MakeWorld(cfg, 0);
  const StepStats s = RunStep(w, cfg, 1);
  ASSERT_EQ(s.acks, 6);
  for (const AgentState& a : w.agents) {
    const auto p = ExtractLimitedPayload(a.own_freq());
    for (AgentId j = 0; j < 3; ++j) {
      if (j == a.id()) continue;
      EXPECT_EQ(a.second_order(j), MixedStrategy::PointMass(3, p.kappa));
      EXPECT_EQ(w.agents[j].estimate(a.id()), MixedStrategy::PointMass(3, p.kappa));
    }
  }
}

TEST(ReplicationTest, AbsorbingAtABijection) {
  for (const char* name : {"dfp", "vl1", "vl2", "vl3"}) {
    auto cfg = PresetConfig(name, 5, 2000, 9);
    cfg.initial.profile = std::vector<ActionIndex>{0, 1, 2, 3, 4};
    cfg.initial.point_mass_beliefs = true;
    const auto r = RunReplication(cfg, 0);
    EXPECT_EQ(r.action_changes_total, 0) << name;
    EXPECT_EQ(r.converged_at, 0) << name;
  }
}

TEST(ReplicationTest, ConvergesToAPureNeAndStopsEarly) {
  auto cfg = PresetConfig("vl1", 5, 10000, 1);
  cfg.early_stop_window = 200;
  cfg.record_every = 10;
  const auto r = RunReplication(cfg, 0);
  ASSERT_TRUE(r.converged_at.has_value());
  EXPECT_EQ(r.steps_run, *r.converged_at + 200);
  EXPECT_LT(r.steps_run, 10000);
  EXPECT_EQ(r.trace.back().step, r.steps_run);
  EXPECT_EQ(CoverageCount(r.final_profile), 5);
  const World w = MakeWorld(cfg, 0);
  EXPECT_TRUE(IsPureNe(w.game, r.final_profile));
}

TEST(ReplicationTest, RecordsEveryKthStepAndTheLast) {
  auto cfg = PresetConfig("vl3", 4, 25);
  cfg.record_every = 10;
  const auto r = RunReplication(cfg, 0);
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.trace[0].step, 10);
  EXPECT_EQ(r.trace[1].step, 20);
  EXPECT_EQ(r.trace[2].step, 25);
}

TEST(ReplicationTest, DistanceMetricIsNanWhenAgentsAndTargetsDiffer) {
  auto cfg = PresetConfig("dfp", 3, 5);
  cfg.game = GeneratedTargets{3, 4};
  const auto r = RunReplication(cfg, 0);
  EXPECT_TRUE(std::isnan(r.trace.back().mean_dist_ne));
  EXPECT_FALSE(std::isnan(r.trace.back().mean_belief_err));
}

TEST(ReplicationTest, SameInputsSameResult) {
  const auto cfg = PresetConfig("vl2", 6, 500, 4);
  EXPECT_EQ(RunReplication(cfg, 1), RunReplication(cfg, 1));
}

TEST(ExperimentTest, ThreadCountDoesNotChangeResults) {
  auto cfg = PresetConfig("vl1", 5, 300, 2);
  cfg.replications = 6;
  const auto a = RunExperiment(cfg, 1);
  const auto b = RunExperiment(cfg, 3);
  EXPECT_EQ(a.aggregate, b.aggregate);
  EXPECT_EQ(a.replications, b.replications);
}

TEST(ExperimentTest, AggregateAveragesByStep) {
  ReplicationResult r1;
  r1.trace = {{1, 1.0, 2.0, 0.5, 3}, {2, 0.0, 0.0, 0.0, 4}};
  ReplicationResult r2;
  r2.trace = {{1, 3.0, 4.0, 1.0, 4}};
  const std::vector<ReplicationResult> reps = {r1, r2};
  const auto agg = Aggregate(reps);
  ASSERT_EQ(agg.size(), 2u);
  EXPECT_EQ(agg[0].mean_dist_ne, 2.0);
  EXPECT_EQ(agg[0].mean_belief_err, 3.0);
  EXPECT_EQ(agg[0].link_utilization, 0.75);
  EXPECT_EQ(agg[0].coverage, 3.5);
  EXPECT_EQ(agg[0].replications, 2);
  EXPECT_EQ(agg[1].replications, 1);
}

TEST(ConfigTest, ValidationFailures) {
  auto expect_config_error = [](const SimConfig& cfg) {
    try {
      cfg.Validate();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidConfig) << e.what();
    }
  };
  const auto base = PresetConfig("vl1", 4, 10);
  EXPECT_NO_THROW(base.Validate());
  auto c = base;
  c.rho = 1.0;
  expect_config_error(c);
  c = base;
  c.epsilon = 0.0;
  expect_config_error(c);
  c = base;
  c.record_every = 0;
  expect_config_error(c);
  c = base;
  c.links = LinkModel::Uniform(4, 0.0, 0.9);
  expect_config_error(c);
  c = base;
  c.links = LinkModel::Uniform(4, 0.6, 0.0);
  expect_config_error(c);
  c = base;
  c.links = LinkModel::Uniform(3, 0.6, 0.9);
  expect_config_error(c);
  c = base;
  c.initial.profile = std::vector<ActionIndex>{0, 1, 2};
  expect_config_error(c);
  c = base;
  c.protocol.eta2 = 0.001;
  expect_config_error(c);
  c = PresetConfig("vl3", 4, 10);
  c.links = LinkModel::Uniform(4, 0.6, 0.0);
  EXPECT_NO_THROW(c.Validate());
}

}  // namespace
}  // namespace dfpsim
