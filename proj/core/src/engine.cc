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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "dfpsim/error.h"
#include "dfpsim/oracle.h"

namespace dfpsim {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool IsOpenUnit(double x) { return x > 0.0 && x < 1.0; }

TraceRecord Snapshot(const World& world, std::int64_t t, std::int64_t attempts,
                     std::span<const ActionIndex> profile) {
  const std::size_t n = world.agents.size();
  const std::size_t k = world.game.num_actions();
  TraceRecord r;
  r.step = t;
  r.mean_dist_ne = n == k ? DistToNearestPureNe(world.agents, k) : kNaN;
  r.mean_belief_err = n >= 2 ? BeliefDisagreement(world.agents) : kNaN;
  r.link_utilization = LinkUtilization(attempts, n);
  r.coverage = CoverageCount(profile);
  return r;
}

std::vector<ActionIndex> CurrentProfile(const World& world) {
  std::vector<ActionIndex> profile(world.agents.size());
  for (std::size_t i = 0; i < profile.size(); ++i) profile[i] = world.agents[i].last_action();
  return profile;
}

}  // namespace

std::size_t SimConfig::num_agents() const {
  if (const auto* g = std::get_if<GeneratedTargets>(&game)) return g->num_agents;
  return std::get<GameSpec>(game).num_agents();
}

std::size_t SimConfig::num_actions() const {
  if (const auto* g = std::get_if<GeneratedTargets>(&game)) return g->num_targets;
  return std::get<GameSpec>(game).num_actions();
}

void SimConfig::Validate() const {
  auto bad = [](const std::string& msg) { Fail(ErrorKind::kInvalidConfig, msg); };
  const std::size_t n = num_agents();
  const std::size_t k = num_actions();
  if (n == 0 || k == 0) bad("game needs at least one agent and one action");
  if (!IsOpenUnit(rho)) bad(fmt::format("rho={} outside (0, 1)", rho));
  if (!IsOpenUnit(epsilon)) bad(fmt::format("epsilon={} outside (0, 1)", epsilon));
  if (t_final < 0) bad("t_final must be >= 0");
  if (replications < 1) bad("replications must be >= 1");
  if (record_every < 1) bad("record_every must be >= 1");
  if (early_stop_window && *early_stop_window < 1) bad("early_stop_window must be >= 1");
  protocol.Validate();
  if (links.empty()) bad("no link model");
  if (links.num_agents() != n) {
    bad(fmt::format("link model covers {} agents, game has {}", links.num_agents(), n));
  }
  if (n >= 2) {
    for (const LinkModel& m : links.models()) {
      if (!(m.min_p_comm() > 0.0)) bad("p_comm must be > 0 on every link");
      if (protocol.gate_kind == GateKind::kNoveltyBandAndSimilarity &&
          protocol.eta3.value_or(0.0) > 0.0 && !(m.min_beta_ack() > 0.0)) {
        bad("beta_ack must be > 0 on every link when eta3 > 0");
      }
    }
  }
  if (initial.profile) {
    if (initial.profile->size() != n) bad("initial profile length differs from N");
    for (ActionIndex a : *initial.profile) {
      if (a >= k) bad("initial profile action out of range");
    }
  }
}

World MakeWorld(const SimConfig& cfg, std::uint64_t replication) {
  const std::uint64_t seed = cfg.seed;
  auto make_game = [&]() -> GameSpec {
    if (const auto* g = std::get_if<GeneratedTargets>(&cfg.game)) {
      RngStream scenario(seed, replication, StreamPurpose::kScenario);
      return GenerateScenario(g->num_agents, g->num_targets, scenario);
    }
    return std::get<GameSpec>(cfg.game);
  };
  World world{make_game(), {},
              RngStream(seed, replication, StreamPurpose::kInertia),
              RngStream(seed, replication, StreamPurpose::kTieBreak),
              RngStream(seed, replication, StreamPurpose::kLink),
              RngStream(seed, replication, StreamPurpose::kAck)};
  const std::size_t n = world.game.num_agents();
  const std::size_t k = world.game.num_actions();

  std::vector<ActionIndex> a0;
  if (cfg.initial.profile) {
    a0 = *cfg.initial.profile;
  } else {
    RngStream init(seed, replication, StreamPurpose::kInitialActions);
    a0.resize(n);
    for (ActionIndex& a : a0) a = static_cast<ActionIndex>(init.UniformIndex(k));
  }

  world.agents.reserve(n);
  for (AgentId i = 0; i < n; ++i) {
    AgentState state(i, n, k, a0[i]);
    if (cfg.initial.point_mass_beliefs) {
      state.set_own_freq(MixedStrategy::PointMass(k, a0[i]));
      for (AgentId j = 0; j < n; ++j) {
        if (j == i) continue;
        state.set_estimate(j, MixedStrategy::PointMass(k, a0[j]));
        state.set_second_order(j, MixedStrategy::PointMass(k, a0[i]));
      }
    }
    world.agents.push_back(std::move(state));
  }
  return world;
}

ActionIndex BestResponseWithInertia(const AgentState& state,
                                    const GameSpec& game, double epsilon,
                                    RngStream& inertia_rng,
                                    RngStream& tie_break_rng, bool* tie_broken) {
  if (tie_broken) *tie_broken = false;
  if (inertia_rng.Uniform01() < epsilon) return state.last_action();

  thread_local std::vector<double> values;
  thread_local std::vector<ActionIndex> argmax;
  values.resize(game.num_actions());
  game.ExpectedUtilities(state.id(), state.estimates(), values);
  const double best = *std::max_element(values.begin(), values.end());
  const double slack = kPayoffTieTolerance * std::max(1.0, std::abs(best));
  argmax.clear();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (best - values[k] <= slack) argmax.push_back(static_cast<ActionIndex>(k));
  }
  if (argmax.size() == 1) return argmax.front();
  if (tie_broken) *tie_broken = true;
  return argmax[tie_break_rng.UniformIndex(argmax.size())];
}

StepStats RunStep(World& world, const SimConfig& cfg, std::int64_t t) {
  StepStats stats;
  const std::size_t n = world.agents.size();
  const std::size_t k = world.game.num_actions();
  const LinkModel& links = cfg.links.at(t);

  // Act against the estimates left by step t - 1, then fold the action into
  // the own frequency.
  for (AgentState& agent : world.agents) {
    if (!cfg.freeze_actions) {
      bool tie = false;
      const ActionIndex a =
          BestResponseWithInertia(agent, world.game, cfg.epsilon, world.inertia_rng,
                                  world.tie_break_rng, &tie);
      stats.tie_breaks += tie ? 1 : 0;
      if (a != agent.last_action()) ++stats.action_changes;
      agent.set_last_action(a);
    }
  }
  for (AgentState& agent : world.agents) {
    UpdateOwnFrequency(agent, agent.last_action(), cfg.rho);
  }

  // Gate every ordered pair.
  std::vector<char> attempted(n * n, 0);
  for (AgentId i = 0; i < n; ++i) {
    const AgentState& agent = world.agents[i];
    const double novelty =
        cfg.protocol.gate_kind == GateKind::kAlways ? 0.0 : Novelty(agent);
    for (AgentId j = 0; j < n; ++j) {
      if (i == j) continue;
      const double similarity =
          cfg.protocol.gate_kind == GateKind::kNoveltyBandAndSimilarity
              ? BeliefSimilarity(agent, j)
              : 0.0;
      if (ShouldTransmit(novelty, similarity, cfg.protocol)) {
        attempted[i * n + j] = 1;
        ++stats.attempts;
      }
    }
  }
  if (stats.attempts == 0) return stats;

  // Link draws in (sender, receiver) order.
  std::vector<char> delivered(n * n, 0);
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = 0; j < n; ++j) {
      if (attempted[i * n + j] && SampleLink(links, i, j, world.link_rng)) {
        delivered[i * n + j] = 1;
        ++stats.deliveries;
      }
    }
  }

  // Messages carry f_i(t); receiving does not change any own frequency, so
  // the decoded payloads are fixed for the rest of the step.
  std::vector<std::optional<MixedStrategy>> decoded(n);
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = 0; j < n; ++j) {
      if (!delivered[i * n + j]) continue;
      if (!decoded[i]) {
        decoded[i] = DecodePayload(BuildPayload(world.agents[i], cfg.protocol), k,
                                   cfg.protocol.reconstruction);
      }
      ApplyReceived(world.agents[j], i, *decoded[i]);
    }
  }

  // Acknowledgement draws in (receiver, sender) order.
  for (AgentId j = 0; j < n; ++j) {
    for (AgentId i = 0; i < n; ++i) {
      if (i == j) continue;
      if (!SampleAck(links, j, i, delivered[i * n + j] != 0, world.ack_rng)) continue;
      ++stats.acks;
      AgentState& sender = world.agents[i];
      ApplyAck(sender, j,
               cfg.second_order_stores_reconstruction ? *decoded[i] : sender.own_freq());
    }
  }
  return stats;
}

ReplicationResult RunReplication(const SimConfig& cfg, std::uint64_t replication) {
  cfg.Validate();
  World world = MakeWorld(cfg, replication);
  ReplicationResult result;

  std::vector<ActionIndex> profile = CurrentProfile(world);
  std::int64_t stable_since = 0;
  bool is_ne = IsPureNe(world.game, profile);

  for (std::int64_t t = 1; t <= cfg.t_final; ++t) {
    const StepStats stats = RunStep(world, cfg, t);
    result.steps_run = t;
    result.attempts_total += stats.attempts;
    result.successes_total += stats.deliveries;
    result.acks_total += stats.acks;
    result.action_changes_total += stats.action_changes;

    if (stats.action_changes > 0) {
      profile = CurrentProfile(world);
      stable_since = t;
      is_ne = IsPureNe(world.game, profile);
    }
    const bool stop = cfg.early_stop_window && is_ne &&
                      t - stable_since >= *cfg.early_stop_window;
    if (t % cfg.record_every == 0 || t == cfg.t_final || stop) {
      result.trace.push_back(Snapshot(world, t, stats.attempts, profile));
    }
    if (stop) break;
  }

  result.final_profile = std::move(profile);
  if (is_ne) result.converged_at = stable_since;
  result.final_states = std::move(world.agents);
  return result;
}

std::int64_t ExperimentResult::converged_count() const {
  return std::count_if(replications.begin(), replications.end(),
                       [](const ReplicationResult& r) { return r.converged_at.has_value(); });
}

std::int64_t ExperimentResult::attempts_total() const {
  std::int64_t total = 0;
  for (const auto& r : replications) total += r.attempts_total;
  return total;
}

std::int64_t ExperimentResult::successes_total() const {
  std::int64_t total = 0;
  for (const auto& r : replications) total += r.successes_total;
  return total;
}

double ExperimentResult::mean_link_utilization(std::size_t num_agents) const {
  std::int64_t steps = 0;
  for (const auto& r : replications) steps += r.steps_run;
  if (steps == 0 || num_agents < 2) return 0.0;
  return static_cast<double>(attempts_total()) /
         (static_cast<double>(num_agents * (num_agents - 1)) * static_cast<double>(steps));
}

std::vector<AggregateRecord> Aggregate(std::span<const ReplicationResult> replications) {
  std::map<std::int64_t, AggregateRecord> by_step;
  for (const ReplicationResult& rep : replications) {
    for (const TraceRecord& r : rep.trace) {
      AggregateRecord& a = by_step[r.step];
      a.step = r.step;
      a.mean_dist_ne += r.mean_dist_ne;
      a.mean_belief_err += r.mean_belief_err;
      a.link_utilization += r.link_utilization;
      a.coverage += static_cast<double>(r.coverage);
      ++a.replications;
    }
  }
  std::vector<AggregateRecord> out;
  out.reserve(by_step.size());
  for (auto& [step, a] : by_step) {
    const double count = static_cast<double>(a.replications);
    a.mean_dist_ne /= count;
    a.mean_belief_err /= count;
    a.link_utilization /= count;
    a.coverage /= count;
    out.push_back(a);
  }
  return out;
}

ExperimentResult RunExperiment(const SimConfig& cfg, int jobs) {
  cfg.Validate();
  const auto reps = static_cast<std::size_t>(cfg.replications);
  ExperimentResult result;
  result.replications.resize(reps);

  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, reps);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      try {
        result.replications[r] = RunReplication(cfg, r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = reps;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  result.aggregate = Aggregate(result.replications);
  return result;
}

}  // namespace dfpsim
