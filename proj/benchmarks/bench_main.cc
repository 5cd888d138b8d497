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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "dfpsim/engine.h"
#include "dfpsim/metrics.h"

namespace dfpsim {
namespace {

SimConfig Config(const std::string& name, std::size_t n) {
  const ProtocolPreset preset = Preset(name);
  SimConfig cfg;
  cfg.game = GeneratedTargets{n, n};
  cfg.protocol = preset.protocol;
  cfg.rho = preset.rho;
  cfg.epsilon = preset.epsilon;
  cfg.links = LinkModel::Uniform(n, 0.6, 0.9);
  cfg.t_final = 1;
  return cfg;
}

void BM_RunStep(benchmark::State& state, const char* protocol) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SimConfig cfg = Config(protocol, n);
  World world = MakeWorld(cfg, 0);
  std::int64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(RunStep(world, cfg, ++t));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_RunStep, dfp, "dfp")->Arg(5)->Arg(20);
BENCHMARK_CAPTURE(BM_RunStep, vl1, "vl1")->Arg(5)->Arg(20);
BENCHMARK_CAPTURE(BM_RunStep, vl3, "vl3")->Arg(5)->Arg(20);

void BM_AssignmentMinCost(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> cost(n * n);
  for (double& x : cost) x = u(gen);
  for (auto _ : state) benchmark::DoNotOptimize(AssignmentMinCost(cost, n));
}
BENCHMARK(BM_AssignmentMinCost)->Arg(7)->Arg(20)->Arg(100);

void BM_ExpectedUtilities(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream rng(1);
  const GameSpec game(GenerateScenario(n, n, rng));
  const AgentState agent(0, n, n, 0);
  std::vector<double> values(n);
  for (auto _ : state) {
    game.ExpectedUtilities(0, agent.estimates(), values);
    benchmark::DoNotOptimize(values.data());
  }
}
BENCHMARK(BM_ExpectedUtilities)->Arg(5)->Arg(20);

void BM_Snapshot(benchmark::State& state) {
  const std::size_t n = 20;
  const SimConfig cfg = Config("vl1", n);
  const World world = MakeWorld(cfg, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(DistToNearestPureNe(world.agents, n));
    benchmark::DoNotOptimize(BeliefDisagreement(world.agents));
  }
}
BENCHMARK(BM_Snapshot);

}  // namespace
}  // namespace dfpsim

BENCHMARK_MAIN();
