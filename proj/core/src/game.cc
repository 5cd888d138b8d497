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

#include "dfpsim/game.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "dfpsim/error.h"

namespace dfpsim {
namespace {

constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

void CheckProfile(std::span<const ActionIndex> profile, std::size_t num_agents,
                  std::size_t num_actions) {
  if (profile.size() != num_agents) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("profile has {} entries, expected {}", profile.size(),
                     num_agents));
  }
  for (ActionIndex a : profile) {
    if (a >= num_actions) {
      Fail(ErrorKind::kInvalidInput,
           fmt::format("action {} out of range for K={}", a, num_actions));
    }
  }
}

}  // namespace

TargetAssignmentGame::TargetAssignmentGame(std::size_t num_agents,
                                           std::size_t num_targets,
                                           std::vector<double> distances)
    : num_agents_(num_agents),
      num_targets_(num_targets),
      distances_(std::move(distances)) {
  if (num_agents == 0 || num_targets == 0) {
    Fail(ErrorKind::kInvalidInput, "target game needs N >= 1 and K >= 1");
  }
  if (distances_.size() != num_agents * num_targets) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("distance matrix has {} entries, expected {}x{}",
                     distances_.size(), num_agents, num_targets));
  }
  for (double& d : distances_) {
    if (!std::isfinite(d) || d < 0.0) {
      Fail(ErrorKind::kInvalidInput, "distances must be finite and non-negative");
    }
    d = std::max(d, kDistanceFloor);
  }
}

TargetAssignmentGame TargetAssignmentGame::FromPositions(
    std::span<const Point2> agents, std::span<const Point2> targets) {
  std::vector<double> d;
  d.reserve(agents.size() * targets.size());
  for (const Point2& a : agents) {
    for (const Point2& t : targets) d.push_back(std::hypot(a.x - t.x, a.y - t.y));
  }
  TargetAssignmentGame game(agents.size(), targets.size(), std::move(d));
  game.agent_positions_.assign(agents.begin(), agents.end());
  game.target_positions_.assign(targets.begin(), targets.end());
  return game;
}

MatrixGame::MatrixGame(std::size_t num_agents, std::size_t num_actions,
                       std::vector<double> utilities)
    : num_agents_(num_agents),
      num_actions_(num_actions),
      utilities_(std::move(utilities)) {
  if (num_agents == 0 || num_actions == 0) {
    Fail(ErrorKind::kInvalidInput, "matrix game needs N >= 1 and K >= 1");
  }
  const auto profiles = CountProfiles(num_agents, num_actions);
  if (!profiles || *profiles > (std::uint64_t{1} << 40) / num_agents) {
    Fail(ErrorKind::kCapacity, "matrix game too large to tabulate");
  }
  num_profiles_ = *profiles;
  if (utilities_.size() != num_agents * num_profiles_) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("utility table has {} entries, expected {}",
                     utilities_.size(), num_agents * num_profiles_));
  }
}

std::optional<std::uint64_t> CountProfiles(std::size_t num_agents,
                                           std::size_t num_actions) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < num_agents; ++i) {
    if (num_actions != 0 && count > UINT64_MAX / num_actions) return std::nullopt;
    count *= num_actions;
  }
  return count;
}

std::uint64_t EncodeProfile(std::span<const ActionIndex> profile,
                            std::size_t num_actions) {
  std::uint64_t index = 0;
  for (ActionIndex a : profile) index = index * num_actions + a;
  return index;
}

std::vector<ActionIndex> DecodeProfile(std::uint64_t index,
                                       std::size_t num_agents,
                                       std::size_t num_actions) {
  std::vector<ActionIndex> profile(num_agents);
  for (std::size_t i = num_agents; i-- > 0;) {
    profile[i] = static_cast<ActionIndex>(index % num_actions);
    index /= num_actions;
  }
  return profile;
}

std::size_t GameSpec::num_agents() const {
  return std::visit([](const auto& g) { return g.num_agents(); }, game_);
}

std::size_t GameSpec::num_actions() const {
  if (const auto* t = target_game()) return t->num_targets();
  return matrix_game()->num_actions();
}

void GameSpec::CheckAgent(AgentId i) const {
  if (i >= num_agents()) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("agent {} out of range for N={}", i, num_agents()));
  }
}

double GameSpec::Utility(AgentId i, std::span<const ActionIndex> profile) const {
  CheckAgent(i);
  CheckProfile(profile, num_agents(), num_actions());
  if (const auto* t = target_game()) {
    const ActionIndex k = profile[i];
    for (std::size_t j = 0; j < profile.size(); ++j) {
      if (j != i && profile[j] == k) return 0.0;
    }
    return 1.0 / t->distance(i, k);
  }
  const auto* m = matrix_game();
  return m->payoff(i, EncodeProfile(profile, m->num_actions()));
}

double GameSpec::ExpectedUtility(AgentId i, ActionIndex k,
                                 std::span<const MixedStrategy> estimates) const {
  CheckAgent(i);
  if (k >= num_actions()) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("action {} out of range for K={}", k, num_actions()));
  }
  if (estimates.size() + 1 != num_agents()) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("expected {} opponent estimates, got {}", num_agents() - 1,
                     estimates.size()));
  }
  for (const MixedStrategy& e : estimates) {
    if (e.size() != num_actions()) {
      Fail(ErrorKind::kInvalidInput, "estimate length differs from K");
    }
  }

  if (const auto* t = target_game()) {
    // P(no opponent on k) / d_ik under independent opponents.
    double free = 1.0;
    for (const MixedStrategy& e : estimates) free *= 1.0 - e[k];
    return free / t->distance(i, k);
  }

  const auto* m = matrix_game();
  const std::size_t n = num_agents();
  const std::size_t num_k = num_actions();
  const auto opponents = CountProfiles(n - 1, num_k);
  if (!opponents || *opponents > kExpectedUtilityEnumerationCap) {
    Fail(ErrorKind::kCapacity,
         fmt::format("expected utility would enumerate more than {} profiles",
                     kExpectedUtilityEnumerationCap));
  }
  std::vector<ActionIndex> profile(n, 0);
  profile[i] = k;
  double total = 0.0;
  for (std::uint64_t r = 0; r < *opponents; ++r) {
    std::uint64_t rest = r;
    double weight = 1.0;
    for (std::size_t slot = n - 1; slot-- > 0;) {
      const std::size_t j = slot < i ? slot : slot + 1;
      profile[j] = static_cast<ActionIndex>(rest % num_k);
      rest /= num_k;
      weight *= estimates[slot][profile[j]];
    }
    if (weight != 0.0) total += weight * m->payoff(i, EncodeProfile(profile, num_k));
  }
  return total;
}

void GameSpec::ExpectedUtilities(AgentId i,
                                 std::span<const MixedStrategy> estimates,
                                 std::span<double> values) const {
  if (values.size() != num_actions()) {
    Fail(ErrorKind::kInvalidInput, "output span length differs from K");
  }
  if (const auto* t = target_game()) {
    CheckAgent(i);
    if (estimates.size() + 1 != num_agents()) {
      Fail(ErrorKind::kInvalidInput, "estimate count differs from N - 1");
    }
    std::fill(values.begin(), values.end(), 1.0);
    for (const MixedStrategy& e : estimates) {
      const auto p = e.probabilities();
      for (std::size_t k = 0; k < values.size(); ++k) values[k] *= 1.0 - p[k];
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
      values[k] /= t->distance(i, static_cast<ActionIndex>(k));
    }
    return;
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = ExpectedUtility(i, static_cast<ActionIndex>(k), estimates);
  }
}

TargetAssignmentGame GenerateScenario(std::size_t num_agents,
                                      std::size_t num_targets, RngStream& rng) {
  if (num_agents == 0 || num_targets == 0) {
    Fail(ErrorKind::kInvalidInput, "scenario needs N >= 1 and K >= 1");
  }
  std::vector<Point2> targets(num_targets);
  for (Point2& t : targets) {
    const double radius = rng.Uniform(15.0, 20.0);
    const double angle = rng.Uniform(0.0, 2.0 * std::numbers::pi);
    t = {radius * std::cos(angle), radius * std::sin(angle)};
  }
  std::vector<Point2> agents(num_agents);
  for (Point2& a : agents) {
    a.x = rng.Normal(0.0, 1.0);
    a.y = rng.Normal(0.0, 1.0);
  }
  return TargetAssignmentGame::FromPositions(agents, targets);
}

MatrixGame ParseMatrixGame(std::istream& in) {
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> profiles;
  std::vector<double> table;
  std::vector<char> seen;
  std::size_t filled = 0;
  std::string line;
  int line_no = 0;
  auto bad = [&line_no](const std::string& msg) {
    Fail(ErrorKind::kInvalidInput, fmt::format("game file line {}: {}", line_no, msg));
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) continue;
    if (key == "n_agents" || key == "n_actions") {
      std::size_t value = 0;
      if (!(fields >> value) || value == 0) bad("expected a positive integer");
      (key == "n_agents" ? n : k) = value;
      if (n && k) {
        if (*k > kDigits.size()) bad("n_actions above 36 cannot be encoded");
        profiles = CountProfiles(*n, *k);
        if (!profiles || *profiles > (std::uint64_t{1} << 26)) {
          Fail(ErrorKind::kCapacity, "game file describes too many profiles");
        }
        table.assign(*n * *profiles, 0.0);
        seen.assign(table.size(), 0);
      }
      continue;
    }
    if (key != "u") bad(fmt::format("unknown record '{}'", key));
    if (!profiles) bad("utility record before n_agents and n_actions");
    std::size_t agent = 0;
    std::string digits;
    double value = 0.0;
    if (!(fields >> agent >> digits >> value)) bad("expected: u <agent> <profile> <utility>");
    if (agent >= *n) bad("agent out of range");
    if (digits.size() != *n) bad("profile must have one digit per agent");
    std::uint64_t index = 0;
    for (char c : digits) {
      const auto d = kDigits.find(static_cast<char>(std::tolower(c)));
      if (d == std::string_view::npos || d >= *k) bad(fmt::format("bad digit '{}'", c));
      index = index * *k + d;
    }
    const std::size_t slot = agent * *profiles + index;
    if (seen[slot]) bad("duplicate utility record");
    seen[slot] = 1;
    table[slot] = value;
    ++filled;
  }
  if (!profiles) Fail(ErrorKind::kInvalidInput, "game file lacks n_agents/n_actions");
  if (filled != table.size()) {
    Fail(ErrorKind::kInvalidInput,
         fmt::format("game file defines {} of {} utilities", filled, table.size()));
  }
  return MatrixGame(*n, *k, std::move(table));
}

MatrixGame LoadMatrixGame(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, fmt::format("cannot open game file '{}'", path));
  return ParseMatrixGame(in);
}

void WriteMatrixGame(std::ostream& out, const MatrixGame& game) {
  out << "n_agents " << game.num_agents() << "\n";
  out << "n_actions " << game.num_actions() << "\n";
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    for (std::uint64_t p = 0; p < game.num_profiles(); ++p) {
      std::string digits;
      for (ActionIndex a : DecodeProfile(p, game.num_agents(), game.num_actions())) {
        digits.push_back(kDigits[a]);
      }
      out << fmt::format("u {} {} {}\n", i, digits,
                         game.payoff(static_cast<AgentId>(i), p));
    }
  }
}

}  // namespace dfpsim
