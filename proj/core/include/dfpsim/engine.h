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

#ifndef DFPSIM_ENGINE_H_
#define DFPSIM_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dfpsim/beliefs.h"
#include "dfpsim/comm.h"
#include "dfpsim/game.h"
#include "dfpsim/metrics.h"
#include "dfpsim/netsim.h"
#include "dfpsim/rng.h"

namespace dfpsim {

// A fresh target-assignment scenario is drawn for every replication from the
// replication's scenario stream.
struct GeneratedTargets {
  std::size_t num_agents = 0;
  std::size_t num_targets = 0;
};

using GameSource = std::variant<GeneratedTargets, GameSpec>;

struct InitialCondition {
  // a(0); drawn uniformly per agent from the initial-actions stream if absent.
  std::optional<std::vector<ActionIndex>> profile;
  // Start every frequency, estimate and second-order belief as the point mass
  // of the initial profile instead of uniform.
  bool point_mass_beliefs = false;
};

struct SimConfig {
  GameSource game = GeneratedTargets{};
  ProtocolConfig protocol;
  double rho = 0.1;
  double epsilon = 0.9;
  LinkSchedule links;
  std::int64_t t_final = 0;
  std::int64_t replications = 1;
  std::uint64_t seed = 0;
  std::int64_t record_every = 1;
  // Stop once the profile is a pure NE that has not changed for this many
  // steps.
  std::optional<std::int64_t> early_stop_window;
  // On acknowledgement, store the receiver's reconstruction instead of f_i.
  bool second_order_stores_reconstruction = false;
  // Every agent keeps its initial action forever; no inertia or tie-break
  // draws are consumed.
  bool freeze_actions = false;
  InitialCondition initial;

  std::size_t num_agents() const;
  std::size_t num_actions() const;
  // Throws kInvalidConfig.
  void Validate() const;
};

struct StepStats {
  std::int64_t attempts = 0;
  std::int64_t deliveries = 0;
  std::int64_t acks = 0;
  std::int64_t action_changes = 0;
  std::int64_t tie_breaks = 0;
};

// Everything one replication mutates.
struct World {
  GameSpec game;
  std::vector<AgentState> agents;
  RngStream inertia_rng;
  RngStream tie_break_rng;
  RngStream link_rng;
  RngStream ack_rng;
};

World MakeWorld(const SimConfig& cfg, std::uint64_t replication);

// With probability epsilon keeps last_action; otherwise maximises expected
// utility against the agent's estimates, breaking exact ties uniformly.
// Always consumes one inertia draw and at most one tie-break draw.
ActionIndex BestResponseWithInertia(const AgentState& state,
                                    const GameSpec& game, double epsilon,
                                    RngStream& inertia_rng,
                                    RngStream& tie_break_rng,
                                    bool* tie_broken = nullptr);

// One synchronous round: act, update own frequencies, gate, deliver,
// acknowledge. Every message is built from the state at the start of the
// communication phase; nothing received this step is forwarded this step.
StepStats RunStep(World& world, const SimConfig& cfg, std::int64_t t);

struct ReplicationResult {
  std::vector<TraceRecord> trace;
  std::vector<ActionIndex> final_profile;
  // First step of the final unchanged run of a pure-NE profile, if the final
  // profile is a pure NE.
  std::optional<std::int64_t> converged_at;
  std::int64_t steps_run = 0;
  std::int64_t attempts_total = 0;
  std::int64_t successes_total = 0;
  std::int64_t acks_total = 0;
  std::int64_t action_changes_total = 0;
  std::vector<AgentState> final_states;

  friend bool operator==(const ReplicationResult& a,
                         const ReplicationResult& b) {
    return a.trace == b.trace && a.final_profile == b.final_profile &&
           a.converged_at == b.converged_at && a.steps_run == b.steps_run &&
           a.attempts_total == b.attempts_total &&
           a.successes_total == b.successes_total &&
           a.acks_total == b.acks_total &&
           a.action_changes_total == b.action_changes_total;
  }
};

ReplicationResult RunReplication(const SimConfig& cfg,
                                 std::uint64_t replication);

// Means across the replications that recorded the step.
struct AggregateRecord {
  std::int64_t step = 0;
  double mean_dist_ne = 0.0;
  double mean_belief_err = 0.0;
  double link_utilization = 0.0;
  double coverage = 0.0;
  std::int64_t replications = 0;

  friend bool operator==(const AggregateRecord&,
                         const AggregateRecord&) = default;
};

struct ExperimentResult {
  std::vector<AggregateRecord> aggregate;
  std::vector<ReplicationResult> replications;

  std::int64_t converged_count() const;
  std::int64_t attempts_total() const;
  std::int64_t successes_total() const;
  // attempts over all replications / (N (N - 1) * steps run).
  double mean_link_utilization(std::size_t num_agents) const;
};

std::vector<AggregateRecord> Aggregate(
    std::span<const ReplicationResult> replications);

// Runs replications 0..R-1 on up to `jobs` threads. The result does not
// depend on `jobs`.
ExperimentResult RunExperiment(const SimConfig& cfg, int jobs = 1);

}  // namespace dfpsim

#endif  // DFPSIM_ENGINE_H_
