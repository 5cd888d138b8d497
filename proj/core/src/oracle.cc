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

#include "dfpsim/oracle.h"

#include <algorithm>
#include <cmath>
#include <deque>

#include <fmt/format.h>

#include "dfpsim/error.h"

namespace dfpsim {
namespace {

std::uint64_t CheckedProfileCount(const GameSpec& game, std::uint64_t cap,
                                  const char* what) {
  const auto count = CountProfiles(game.num_agents(), game.num_actions());
  if (!count || *count > cap) {
    Fail(ErrorKind::kCapacity,
         fmt::format("{} needs K^N <= {} profiles (N={}, K={})", what, cap,
                     game.num_agents(), game.num_actions()));
  }
  return *count;
}

bool Ties(double best, double value) {
  return best - value <= kPayoffTieTolerance * std::max(1.0, std::abs(best));
}

}  // namespace

std::vector<ActionIndex> BestResponseExact(const GameSpec& game, AgentId i,
                                           std::span<const ActionIndex> profile) {
  Profile probe(profile.begin(), profile.end());
  std::vector<double> values(game.num_actions());
  for (std::size_t k = 0; k < values.size(); ++k) {
    probe.at(i) = static_cast<ActionIndex>(k);
    values[k] = game.Utility(i, probe);
  }
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<ActionIndex> argmax;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (Ties(best, values[k])) argmax.push_back(static_cast<ActionIndex>(k));
  }
  return argmax;
}

bool IsPureNe(const GameSpec& game, std::span<const ActionIndex> profile) {
  for (AgentId i = 0; i < profile.size(); ++i) {
    const auto br = BestResponseExact(game, i, profile);
    if (!std::binary_search(br.begin(), br.end(), profile[i])) return false;
  }
  return true;
}

std::vector<Profile> EnumeratePureNe(const GameSpec& game) {
  const std::uint64_t count =
      CheckedProfileCount(game, kNeEnumerationCap, "pure-NE enumeration");
  std::vector<Profile> out;
  for (std::uint64_t p = 0; p < count; ++p) {
    Profile profile = DecodeProfile(p, game.num_agents(), game.num_actions());
    if (IsPureNe(game, profile)) out.push_back(std::move(profile));
  }
  return out;
}

std::vector<Profile> WeakAcyclicityReport::Witness(std::uint64_t start) const {
  std::vector<Profile> path;
  if (start >= next_hop.size() || next_hop[start] == kUnreachable) return path;
  std::int64_t p = static_cast<std::int64_t>(start);
  while (true) {
    path.push_back(DecodeProfile(static_cast<std::uint64_t>(p), num_agents, num_actions));
    if (next_hop[static_cast<std::size_t>(p)] == kAtNe) break;
    p = next_hop[static_cast<std::size_t>(p)];
  }
  return path;
}

WeakAcyclicityReport CheckWeakAcyclicity(const GameSpec& game) {
  const std::uint64_t count =
      CheckedProfileCount(game, kAcyclicityCap, "weak-acyclicity check");
  const std::size_t n = game.num_agents();
  const std::size_t k = game.num_actions();

  // Reverse best-response graph: predecessors[q] lists every p with an edge
  // p -> q, i.e. one agent in p is not best-responding and q moves it onto a
  // best response.
  std::vector<std::vector<std::uint64_t>> predecessors(count);
  std::vector<char> is_ne(count, 0);
  std::vector<std::uint64_t> place(n);
  for (std::size_t i = 0, w = 1; i < n; ++i, w *= k) place[n - 1 - i] = w;

  for (std::uint64_t p = 0; p < count; ++p) {
    const Profile profile = DecodeProfile(p, n, k);
    bool ne = true;
    for (AgentId i = 0; i < n; ++i) {
      const auto br = BestResponseExact(game, i, profile);
      if (std::binary_search(br.begin(), br.end(), profile[i])) continue;
      ne = false;
      for (ActionIndex b : br) {
        const std::uint64_t q = p - profile[i] * place[i] + b * place[i];
        predecessors[q].push_back(p);
      }
    }
    is_ne[p] = ne ? 1 : 0;
  }

  WeakAcyclicityReport report;
  report.num_agents = n;
  report.num_actions = k;
  report.next_hop.assign(count, WeakAcyclicityReport::kUnreachable);
  std::deque<std::uint64_t> frontier;
  for (std::uint64_t p = 0; p < count; ++p) {
    if (is_ne[p]) {
      report.next_hop[p] = WeakAcyclicityReport::kAtNe;
      frontier.push_back(p);
    }
  }
  while (!frontier.empty()) {
    const std::uint64_t q = frontier.front();
    frontier.pop_front();
    for (std::uint64_t p : predecessors[q]) {
      if (report.next_hop[p] != WeakAcyclicityReport::kUnreachable) continue;
      report.next_hop[p] = static_cast<std::int64_t>(q);
      frontier.push_back(p);
    }
  }
  report.weakly_acyclic =
      std::none_of(report.next_hop.begin(), report.next_hop.end(), [](std::int64_t h) {
        return h == WeakAcyclicityReport::kUnreachable;
      });
  return report;
}

bool CheckAssumptionOne(const GameSpec& game) {
  for (const Profile& ne : EnumeratePureNe(game)) {
    for (AgentId i = 0; i < ne.size(); ++i) {
      if (BestResponseExact(game, i, ne).size() != 1) return false;
    }
  }
  return true;
}

}  // namespace dfpsim
