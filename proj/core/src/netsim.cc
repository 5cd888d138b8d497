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

#include "dfpsim/netsim.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dfpsim/error.h"

namespace dfpsim {
namespace {

void CheckProbabilities(std::vector<double>& m, std::size_t n, const char* name) {
  if (m.size() != n * n) {
    Fail(ErrorKind::kInvalidConfig,
         fmt::format("{} matrix has {} entries, expected {}x{}", name, m.size(), n, n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double& v = m[i * n + j];
      if (i == j) {
        v = 0.0;
      } else if (!(v >= 0.0 && v <= 1.0)) {
        Fail(ErrorKind::kInvalidConfig,
             fmt::format("{}[{}][{}]={} outside [0, 1]", name, i, j, v));
      }
    }
  }
}

double OffDiagonalMin(const std::vector<double>& m, std::size_t n) {
  double lo = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) lo = std::min(lo, m[i * n + j]);
    }
  }
  return lo;
}

void CheckPair(AgentId a, AgentId b, std::size_t n) {
  if (a == b) Fail(ErrorKind::kInvalidInput, "link endpoints must differ");
  if (a >= n || b >= n) Fail(ErrorKind::kInvalidInput, "link endpoint out of range");
}

}  // namespace

LinkModel LinkModel::Uniform(std::size_t num_agents, double p_comm,
                             double beta_ack) {
  return FromMatrices(num_agents,
                      std::vector<double>(num_agents * num_agents, p_comm),
                      std::vector<double>(num_agents * num_agents, beta_ack));
}

LinkModel LinkModel::FromMatrices(std::size_t num_agents,
                                  std::vector<double> p_comm,
                                  std::vector<double> beta_ack) {
  CheckProbabilities(p_comm, num_agents, "p_comm");
  CheckProbabilities(beta_ack, num_agents, "beta_ack");
  LinkModel model;
  model.num_agents_ = num_agents;
  model.p_comm_ = std::move(p_comm);
  model.beta_ack_ = std::move(beta_ack);
  return model;
}

double LinkModel::min_p_comm() const { return OffDiagonalMin(p_comm_, num_agents_); }
double LinkModel::min_beta_ack() const {
  return OffDiagonalMin(beta_ack_, num_agents_);
}

LinkSchedule::LinkSchedule(std::vector<LinkModel> models)
    : models_(std::move(models)) {
  for (const LinkModel& m : models_) {
    if (m.num_agents() != models_.front().num_agents()) {
      Fail(ErrorKind::kInvalidConfig, "link schedule mixes agent counts");
    }
  }
}

const LinkModel& LinkSchedule::at(std::int64_t step) const {
  if (models_.empty()) Fail(ErrorKind::kInvalidConfig, "empty link schedule");
  const auto n = static_cast<std::int64_t>(models_.size());
  const std::int64_t slot = ((step - 1) % n + n) % n;
  return models_[static_cast<std::size_t>(slot)];
}

bool SampleLink(const LinkModel& model, AgentId from, AgentId to,
                RngStream& rng) {
  CheckPair(from, to, model.num_agents());
  return rng.Bernoulli(model.p_comm(from, to));
}

bool SampleAck(const LinkModel& model, AgentId receiver, AgentId sender,
               bool delivered, RngStream& rng) {
  CheckPair(receiver, sender, model.num_agents());
  if (!delivered) return false;
  return rng.Bernoulli(model.beta_ack(receiver, sender));
}

}  // namespace dfpsim
