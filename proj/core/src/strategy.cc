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

#include "dfpsim/strategy.h"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "dfpsim/error.h"

namespace dfpsim {

MixedStrategy MixedStrategy::Uniform(std::size_t num_actions) {
  if (num_actions == 0) Fail(ErrorKind::kInvalidInput, "strategy over 0 actions");
  return MixedStrategy(std::vector<double>(num_actions, 1.0 / num_actions));
}

MixedStrategy MixedStrategy::PointMass(std::size_t num_actions, ActionIndex k) {
  if (k >= num_actions) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("action {} out of range for K={}", k, num_actions));
  }
  std::vector<double> probs(num_actions, 0.0);
  probs[k] = 1.0;
  return MixedStrategy(std::move(probs));
}

MixedStrategy MixedStrategy::FromProbabilities(std::vector<double> probs) {
  MixedStrategy s(std::move(probs));
  if (!s.IsValid()) {
    Fail(ErrorKind::kInvalidInput, "vector is not a probability distribution");
  }
  return s;
}

void MixedStrategy::MixTowards(ActionIndex k, double rate) {
  const double keep = 1.0 - rate;
  for (double& p : probs_) p *= keep;
  probs_[k] += rate;
}

bool MixedStrategy::IsValid(double tolerance) const {
  if (probs_.empty()) return false;
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tolerance;
}

double Distance(const MixedStrategy& a, const MixedStrategy& b) {
  const auto pa = a.probabilities();
  const auto pb = b.probabilities();
  double sq = 0.0;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    const double d = pa[k] - pb[k];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double DistanceToVertex(const MixedStrategy& f, ActionIndex k) {
  const auto p = f.probabilities();
  double sq = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) {
    const double d = (m == k ? 1.0 : 0.0) - p[m];
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace dfpsim
