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

#include "dfpsim/beliefs.h"

#include <fmt/format.h>

#include "dfpsim/error.h"

namespace dfpsim {
namespace {

// Slack allowed on the payload range check for values that went through
// floating-point frequency updates.
constexpr double kPayloadSlack = 1e-12;

void CheckSameLength(const MixedStrategy& f, std::size_t num_actions) {
  if (f.size() != num_actions) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("strategy has {} entries, expected {}", f.size(), num_actions));
  }
}

}  // namespace

AgentState::AgentState(AgentId id, std::size_t num_agents,
                       std::size_t num_actions, ActionIndex initial_action)
    : id_(id),
      last_action_(initial_action),
      own_freq_(MixedStrategy::Uniform(num_actions)) {
  if (id >= num_agents) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("agent id {} out of range for N={}", id, num_agents));
  }
  if (initial_action >= num_actions) {
    Fail(ErrorKind::kInvalidInput, "initial action out of range");
  }
  estimates_.assign(num_agents - 1, own_freq_);
  second_order_.assign(num_agents - 1, own_freq_);
}

std::size_t AgentState::SlotOf(AgentId j) const {
  if (j == id_ || j >= num_agents()) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("agent {} has no belief slot for agent {}", id_, j));
  }
  return j < id_ ? j : j - 1;
}

void AgentState::set_last_action(ActionIndex a) {
  if (a >= num_actions()) Fail(ErrorKind::kInvalidInput, "action out of range");
  last_action_ = a;
}

void AgentState::set_own_freq(MixedStrategy f) {
  CheckSameLength(f, num_actions());
  own_freq_ = std::move(f);
}

const MixedStrategy& AgentState::estimate(AgentId j) const {
  return estimates_[SlotOf(j)];
}

const MixedStrategy& AgentState::second_order(AgentId j) const {
  return second_order_[SlotOf(j)];
}

void AgentState::set_estimate(AgentId j, MixedStrategy f) {
  CheckSameLength(f, num_actions());
  estimates_[SlotOf(j)] = std::move(f);
}

void AgentState::set_second_order(AgentId j, MixedStrategy f) {
  CheckSameLength(f, num_actions());
  second_order_[SlotOf(j)] = std::move(f);
}

void UpdateOwnFrequency(AgentState& state, ActionIndex a, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    Fail(ErrorKind::kInvalidConfig, fmt::format("rho={} outside (0, 1)", rho));
  }
  if (a >= state.num_actions()) Fail(ErrorKind::kInvalidInput, "action out of range");
  MixedStrategy f = state.own_freq();
  f.MixTowards(a, rho);
  state.set_own_freq(std::move(f));
}

double Novelty(const AgentState& state) {
  return DistanceToVertex(state.own_freq(), state.last_action());
}

double BeliefSimilarity(const AgentState& state, AgentId j) {
  return Distance(state.own_freq(), state.second_order(j));
}

void ApplyReceived(AgentState& state, AgentId j,
                   const MixedStrategy& reconstructed) {
  state.set_estimate(j, reconstructed);
}

void ApplyAck(AgentState& state, AgentId j, const MixedStrategy& stored) {
  state.set_second_order(j, stored);
}

LimitedPayload ExtractLimitedPayload(const MixedStrategy& freq) {
  LimitedPayload out{freq[0], 0};
  for (std::size_t k = 1; k < freq.size(); ++k) {
    if (freq[k] > out.upsilon) out = {freq[k], static_cast<ActionIndex>(k)};
  }
  return out;
}

MixedStrategy Reconstruct(double upsilon, ActionIndex kappa,
                          std::size_t num_actions, ReconstructionRule rule) {
  if (num_actions == 0) Fail(ErrorKind::kMalformedPayload, "K must be positive");
  if (kappa >= num_actions) {
    Fail(ErrorKind::kMalformedPayload,
         fmt::format("kappa={} out of range for K={}", kappa, num_actions));
  }
  const double floor = 1.0 / static_cast<double>(num_actions);
  if (!(upsilon >= floor - kPayloadSlack && upsilon <= 1.0 + kPayloadSlack)) {
    Fail(ErrorKind::kMalformedPayload,
         fmt::format("upsilon={} outside [1/{}, 1]", upsilon, num_actions));
  }
  if (num_actions == 1 || rule == ReconstructionRule::kFullSupport ||
      upsilon >= 1.0) {
    return MixedStrategy::PointMass(num_actions, kappa);
  }
  const double v = std::max(upsilon, floor);
  std::vector<double> probs(num_actions,
                            (1.0 - v) / static_cast<double>(num_actions - 1));
  probs[kappa] = v;
  return MixedStrategy::FromProbabilities(std::move(probs));
}

}  // namespace dfpsim
