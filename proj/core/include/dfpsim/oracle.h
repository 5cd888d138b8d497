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

#ifndef DFPSIM_ORACLE_H_
#define DFPSIM_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dfpsim/game.h"

namespace dfpsim {

inline constexpr std::uint64_t kNeEnumerationCap = 1'000'000;
inline constexpr std::uint64_t kAcyclicityCap = 100'000;

// Payoffs closer than this are treated as equal when forming argmax sets.
inline constexpr double kPayoffTieTolerance = 1e-12;

using Profile = std::vector<ActionIndex>;

// argmax_k u_i(k, profile_{-i}), ascending.
std::vector<ActionIndex> BestResponseExact(const GameSpec& game, AgentId i,
                                           std::span<const ActionIndex> profile);

bool IsPureNe(const GameSpec& game, std::span<const ActionIndex> profile);

// All pure Nash equilibria in profile-index order. Throws kCapacity when
// K^N > kNeEnumerationCap.
std::vector<Profile> EnumeratePureNe(const GameSpec& game);

struct WeakAcyclicityReport {
  static constexpr std::int64_t kAtNe = -1;
  static constexpr std::int64_t kUnreachable = -2;

  bool weakly_acyclic = false;
  std::size_t num_agents = 0;
  std::size_t num_actions = 0;
  // next_hop[p] is the successor of profile p on a shortest best-response
  // path to a pure NE, kAtNe when p is itself a pure NE, or kUnreachable.
  // Indexed by EncodeProfile.
  std::vector<std::int64_t> next_hop;

  // Profiles from `start` (inclusive) to the NE it reaches; empty when no NE
  // is reachable. A start that is already a pure NE yields a single profile,
  // i.e. a path with zero moves.
  std::vector<Profile> Witness(std::uint64_t start) const;
};

// Builds the best-response graph (one agent switches to a strictly better
// best response) and searches backwards from the pure NE set. Throws
// kCapacity when K^N > kAcyclicityCap.
WeakAcyclicityReport CheckWeakAcyclicity(const GameSpec& game);

// True when every agent's best-response set is a singleton at every pure NE.
bool CheckAssumptionOne(const GameSpec& game);

}  // namespace dfpsim

#endif  // DFPSIM_ORACLE_H_
