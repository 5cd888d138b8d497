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

#ifndef DFPSIM_NETSIM_H_
#define DFPSIM_NETSIM_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dfpsim/rng.h"
#include "dfpsim/strategy.h"

namespace dfpsim {

// Per-pair delivery probability p[sender][receiver] and acknowledgement
// probability beta[receiver][sender]. Diagonals are zero.
class LinkModel {
 public:
  LinkModel() = default;
  // Broadcasts the two scalars to every ordered pair.
  static LinkModel Uniform(std::size_t num_agents, double p_comm,
                           double beta_ack);
  // Row-major N x N matrices; diagonal entries are ignored and stored as 0.
  static LinkModel FromMatrices(std::size_t num_agents,
                                std::vector<double> p_comm,
                                std::vector<double> beta_ack);

  std::size_t num_agents() const { return num_agents_; }
  double p_comm(AgentId from, AgentId to) const {
    return p_comm_[from * num_agents_ + to];
  }
  double beta_ack(AgentId from, AgentId to) const {
    return beta_ack_[from * num_agents_ + to];
  }

  // Smallest off-diagonal entry of each matrix (1 when N = 1).
  double min_p_comm() const;
  double min_beta_ack() const;

 private:
  std::size_t num_agents_ = 0;
  std::vector<double> p_comm_;
  std::vector<double> beta_ack_;
};

// Link models indexed by step; step t (1-based) uses entry (t - 1) mod size.
class LinkSchedule {
 public:
  LinkSchedule() = default;
  LinkSchedule(LinkModel model) : models_{std::move(model)} {}  // NOLINT
  explicit LinkSchedule(std::vector<LinkModel> models);

  const LinkModel& at(std::int64_t step) const;
  std::size_t num_agents() const {
    return models_.empty() ? 0 : models_.front().num_agents();
  }
  std::span<const LinkModel> models() const { return models_; }
  bool empty() const { return models_.empty(); }

 private:
  std::vector<LinkModel> models_;
};

// c_ij: does a message from `from` reach `to` this step. One draw.
bool SampleLink(const LinkModel& model, AgentId from, AgentId to,
                RngStream& rng);

// b: does `receiver` get an acknowledgement back to `sender`. No draw is
// consumed when nothing was delivered.
bool SampleAck(const LinkModel& model, AgentId receiver, AgentId sender,
               bool delivered, RngStream& rng);

}  // namespace dfpsim

#endif  // DFPSIM_NETSIM_H_
