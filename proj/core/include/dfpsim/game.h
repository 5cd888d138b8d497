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

#ifndef DFPSIM_GAME_H_
#define DFPSIM_GAME_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dfpsim/rng.h"
#include "dfpsim/strategy.h"

namespace dfpsim {

// Distances below this are clamped so that 1/d stays finite.
inline constexpr double kDistanceFloor = 1e-6;

// Cap on the number of opponent profiles enumerated by the exact expected
// utility of an explicit game.
inline constexpr std::uint64_t kExpectedUtilityEnumerationCap = 10'000'000;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// N agents each pick one of K targets. An agent earns 1/d_ik when it is the
// only agent on target k and zero otherwise.
class TargetAssignmentGame {
 public:
  // distances is row-major N x K. Entries are floored at kDistanceFloor.
  TargetAssignmentGame(std::size_t num_agents, std::size_t num_targets,
                       std::vector<double> distances);
  static TargetAssignmentGame FromPositions(std::span<const Point2> agents,
                                            std::span<const Point2> targets);

  std::size_t num_agents() const { return num_agents_; }
  std::size_t num_targets() const { return num_targets_; }
  double distance(AgentId i, ActionIndex k) const {
    return distances_[i * num_targets_ + k];
  }
  std::span<const double> distances() const { return distances_; }

  const std::vector<Point2>& agent_positions() const { return agent_positions_; }
  const std::vector<Point2>& target_positions() const {
    return target_positions_;
  }

 private:
  std::size_t num_agents_;
  std::size_t num_targets_;
  std::vector<double> distances_;
  std::vector<Point2> agent_positions_;
  std::vector<Point2> target_positions_;
};

// Explicit utility table over all K^N profiles. Profiles are indexed in base K
// with agent 0 as the most significant digit.
class MatrixGame {
 public:
  // utilities[i * K^N + profile_index] is agent i's payoff.
  MatrixGame(std::size_t num_agents, std::size_t num_actions,
             std::vector<double> utilities);

  std::size_t num_agents() const { return num_agents_; }
  std::size_t num_actions() const { return num_actions_; }
  std::uint64_t num_profiles() const { return num_profiles_; }
  double payoff(AgentId i, std::uint64_t profile_index) const {
    return utilities_[i * num_profiles_ + profile_index];
  }

 private:
  std::size_t num_agents_;
  std::size_t num_actions_;
  std::uint64_t num_profiles_;
  std::vector<double> utilities_;
};

// K^N, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> CountProfiles(std::size_t num_agents,
                                           std::size_t num_actions);
std::uint64_t EncodeProfile(std::span<const ActionIndex> profile,
                            std::size_t num_actions);
std::vector<ActionIndex> DecodeProfile(std::uint64_t index,
                                       std::size_t num_agents,
                                       std::size_t num_actions);

class GameSpec {
 public:
  GameSpec(TargetAssignmentGame game) : game_(std::move(game)) {}  // NOLINT
  GameSpec(MatrixGame game) : game_(std::move(game)) {}            // NOLINT

  std::size_t num_agents() const;
  std::size_t num_actions() const;

  const TargetAssignmentGame* target_game() const {
    return std::get_if<TargetAssignmentGame>(&game_);
  }
  const MatrixGame* matrix_game() const {
    return std::get_if<MatrixGame>(&game_);
  }

  // u_i(profile). Throws kInvalidInput on a malformed profile.
  double Utility(AgentId i, std::span<const ActionIndex> profile) const;

  // u_i(k, f_{-i}) where estimates holds the N-1 opponents in ascending agent
  // order. Closed form for target assignment; exact enumeration (capped at
  // kExpectedUtilityEnumerationCap profiles) for explicit games.
  double ExpectedUtility(AgentId i, ActionIndex k,
                         std::span<const MixedStrategy> estimates) const;

  // Fills values[k] = ExpectedUtility(i, k, estimates) for every k.
  void ExpectedUtilities(AgentId i, std::span<const MixedStrategy> estimates,
                         std::span<double> values) const;

 private:
  void CheckAgent(AgentId i) const;

  std::variant<TargetAssignmentGame, MatrixGame> game_;
};

// Targets at polar radius ~ U(15, 20) and angle ~ U(0, 2 pi); agents at
// x, y ~ N(0, 1) independently.
TargetAssignmentGame GenerateScenario(std::size_t num_agents,
                                      std::size_t num_targets, RngStream& rng);

// Explicit-game text format:
//
//   n_agents <N>
//   n_actions <K>
//   u <agent> <profile digits> <utility>     (one line per agent and profile)
//
// Profile digits are base K, agent 0 first, written with 0-9 then a-z, so
// K <= 36. Blank lines and '#' comments are ignored.
MatrixGame ParseMatrixGame(std::istream& in);
MatrixGame LoadMatrixGame(const std::string& path);
void WriteMatrixGame(std::ostream& out, const MatrixGame& game);

}  // namespace dfpsim

#endif  // DFPSIM_GAME_H_
