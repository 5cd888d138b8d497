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

#ifndef DFPSIM_STRATEGY_H_
#define DFPSIM_STRATEGY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dfpsim {

// Index of an action in the common action set; action k is the unit vector
// e_k.
using ActionIndex = std::uint32_t;
using AgentId = std::uint32_t;

// Tolerance on the simplex sum accepted when validating external input.
inline constexpr double kSimplexTolerance = 1e-9;

// A probability vector over K actions. Holds empirical frequencies, first-
// and second-order estimates, and reconstructed payloads alike.
class MixedStrategy {
 public:
  MixedStrategy() = default;

  static MixedStrategy Uniform(std::size_t num_actions);
  static MixedStrategy PointMass(std::size_t num_actions, ActionIndex k);
  // Validates non-negativity and the simplex sum; throws kInvalidInput.
  static MixedStrategy FromProbabilities(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  std::span<const double> probabilities() const { return probs_; }

  // In-place convex step towards e_k: f <- (1 - rate) f + rate e_k.
  void MixTowards(ActionIndex k, double rate);

  bool IsValid(double tolerance = kSimplexTolerance) const;

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  explicit MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Euclidean distance between two strategies of equal length.
double Distance(const MixedStrategy& a, const MixedStrategy& b);

// ||e_k - f||, computed without materialising e_k.
double DistanceToVertex(const MixedStrategy& f, ActionIndex k);

}  // namespace dfpsim

#endif  // DFPSIM_STRATEGY_H_
