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

#include "dfpsim/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dfpsim/error.h"

namespace dfpsim {

Assignment AssignmentMinCost(std::span<const double> cost, std::size_t n) {
  if (cost.size() != n * n) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("cost matrix has {} entries, expected {}x{}", cost.size(), n, n));
  }
  for (double c : cost) {
    if (!std::isfinite(c)) Fail(ErrorKind::kInvalidInput, "cost matrix has non-finite entries");
  }
  Assignment result;
  if (n == 0) return result;

  // Shortest augmenting paths with row potentials u and column potentials v.
  // Rows and columns are 1-based here; column 0 is the virtual source.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<std::size_t> row_of_col(n + 1, 0);
  std::vector<std::size_t> prev_col(n + 1, 0);
  std::vector<double> min_slack(n + 1);
  std::vector<char> used(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    row_of_col[0] = row;
    std::size_t col = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col] = 1;
      const std::size_t r = row_of_col[col];
      double delta = kInf;
      std::size_t next = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double slack = cost[(r - 1) * n + (c - 1)] - u[r] - v[c];
        if (slack < min_slack[c]) {
          min_slack[c] = slack;
          prev_col[c] = col;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          next = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[row_of_col[c]] += delta;
          v[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col = next;
    } while (row_of_col[col] != 0);
    do {
      const std::size_t p = prev_col[col];
      row_of_col[col] = row_of_col[p];
      col = p;
    } while (col != 0);
  }

  result.column_of_row.assign(n, 0);
  for (std::size_t c = 1; c <= n; ++c) result.column_of_row[row_of_col[c] - 1] = c - 1;
  for (std::size_t r = 0; r < n; ++r) result.cost += cost[r * n + result.column_of_row[r]];
  return result;
}

double DistToNearestPureNe(std::span<const AgentState> states,
                           std::size_t num_targets) {
  const std::size_t n = states.size();
  if (n != num_targets) {
    Fail(ErrorKind::kUnsupportedMetric,
         fmt::format("distance to pure NE needs N == K (N={}, K={})", n, num_targets));
  }
  if (n == 0) return 0.0;
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      cost[i * n + k] = DistanceToVertex(states[i].own_freq(), static_cast<ActionIndex>(k));
    }
  }
  return AssignmentMinCost(cost, n).cost / static_cast<double>(n);
}

double BeliefDisagreement(std::span<const AgentState> states) {
  const std::size_t n = states.size();
  if (n < 2) Fail(ErrorKind::kUnsupportedMetric, "belief disagreement needs N >= 2");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      total += Distance(states[i].own_freq(),
                        states[j].estimate(static_cast<AgentId>(i)));
    }
  }
  return total / static_cast<double>(n * (n - 1));
}

std::int64_t CoverageCount(std::span<const ActionIndex> profile) {
  std::vector<ActionIndex> sorted(profile.begin(), profile.end());
  std::sort(sorted.begin(), sorted.end());
  return std::unique(sorted.begin(), sorted.end()) - sorted.begin();
}

double LinkUtilization(std::int64_t attempts, std::size_t num_agents) {
  if (num_agents < 2) return 0.0;
  return static_cast<double>(attempts) /
         static_cast<double>(num_agents * (num_agents - 1));
}

}  // namespace dfpsim
