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

#ifndef DFPSIM_METRICS_H_
#define DFPSIM_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dfpsim/beliefs.h"
#include "dfpsim/game.h"

namespace dfpsim {

// Metric snapshot at one step. Metrics that are undefined for the instance
// (distance to NE when N != K, disagreement when N < 2) hold NaN.
struct TraceRecord {
  std::int64_t step = 0;
  double mean_dist_ne = 0.0;
  double mean_belief_err = 0.0;
  double link_utilization = 0.0;
  std::int64_t coverage = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct Assignment {
  std::vector<std::size_t> column_of_row;  // row i is matched to column_of_row[i]
  double cost = 0.0;
};

// Exact minimum-cost perfect matching of a square matrix (row-major n x n),
// O(n^3) shortest augmenting paths with potentials.
Assignment AssignmentMinCost(std::span<const double> cost, std::size_t n);

// (1/N) sum_i ||f_i - e_{a*_i}|| for the pure NE a* (a bijection agents ->
// targets) closest to the own-frequency profile. Requires N == K.
double DistToNearestPureNe(std::span<const AgentState> states,
                           std::size_t num_targets);

// Mean over ordered pairs (i, j != i) of ||f_i - f^j_i||. Requires N >= 2.
double BeliefDisagreement(std::span<const AgentState> states);

// Number of distinct actions in the profile.
std::int64_t CoverageCount(std::span<const ActionIndex> profile);

// attempts / (N (N - 1)), or 0 when N < 2.
double LinkUtilization(std::int64_t attempts, std::size_t num_agents);

}  // namespace dfpsim

#endif  // DFPSIM_METRICS_H_
