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

#ifndef DFPSIM_BELIEFS_H_
#define DFPSIM_BELIEFS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "dfpsim/strategy.h"

namespace dfpsim {

// How a receiver rebuilds a frequency vector from a limited (max, argmax)
// payload.
enum class ReconstructionRule {
  kFullSupport,       // all mass on the reported action
  kUniformRemainder,  // reported mass on the action, the rest spread evenly
};

// Everything one agent knows: its last action, its own empirical frequency,
// its estimates of every other agent's frequency, and its model of what every
// other agent believes about it.
class AgentState {
 public:
  AgentState() = default;
  // Uniform own frequency, estimates and second-order beliefs.
  AgentState(AgentId id, std::size_t num_agents, std::size_t num_actions,
             ActionIndex initial_action);

  AgentId id() const { return id_; }
  std::size_t num_agents() const { return estimates_.size() + 1; }
  std::size_t num_actions() const { return own_freq_.size(); }

  ActionIndex last_action() const { return last_action_; }
  void set_last_action(ActionIndex a);

  const MixedStrategy& own_freq() const { return own_freq_; }
  void set_own_freq(MixedStrategy f);

  // f^i_j for j != id(). Throws kInvalidInput for j == id() or out of range.
  const MixedStrategy& estimate(AgentId j) const;
  // f^{j(i)}_i: this agent's model of j's estimate of it.
  const MixedStrategy& second_order(AgentId j) const;

  // All N-1 estimates in ascending agent order, skipping id().
  std::span<const MixedStrategy> estimates() const { return estimates_; }
  std::span<const MixedStrategy> second_order_beliefs() const {
    return second_order_;
  }

  void set_estimate(AgentId j, MixedStrategy f);
  void set_second_order(AgentId j, MixedStrategy f);

  // Slot of agent j in estimates() / second_order_beliefs().
  std::size_t SlotOf(AgentId j) const;

 private:
  AgentId id_ = 0;
  ActionIndex last_action_ = 0;
  MixedStrategy own_freq_;
  std::vector<MixedStrategy> estimates_;
  std::vector<MixedStrategy> second_order_;
};

// f_i <- (1 - rho) f_i + rho e_a. rho must lie in (0, 1).
void UpdateOwnFrequency(AgentState& state, ActionIndex a, double rho);

// h_ii = ||e_{a_i} - f_i||.
double Novelty(const AgentState& state);

// h_ij = ||f_i - f^{j(i)}_i||.
double BeliefSimilarity(const AgentState& state, AgentId j);

// Overwrites f^i_j with what was received from j.
void ApplyReceived(AgentState& state, AgentId j,
                   const MixedStrategy& reconstructed);

// Overwrites f^{j(i)}_i after j acknowledged a delivery.
void ApplyAck(AgentState& state, AgentId j, const MixedStrategy& stored);

struct LimitedPayload {
  double upsilon = 0.0;   // largest entry
  ActionIndex kappa = 0;  // its index, smallest on ties
};

LimitedPayload ExtractLimitedPayload(const MixedStrategy& freq);

// Rebuilds a distribution from (upsilon, kappa). The result is on the simplex
// and puts at least upsilon on kappa. Throws kMalformedPayload if upsilon is
// outside [1/K, 1] or kappa >= K.
MixedStrategy Reconstruct(double upsilon, ActionIndex kappa,
                          std::size_t num_actions, ReconstructionRule rule);

}  // namespace dfpsim

#endif  // DFPSIM_BELIEFS_H_
