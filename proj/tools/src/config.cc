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

#include "dfpsim_cli/config.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "dfpsim/error.h"
#include "dfpsim/game.h"

namespace dfpsim::cli {
namespace {

[[noreturn]] void Bad(const std::string& msg) { Fail(ErrorKind::kInvalidConfig, msg); }

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double ParseDouble(const Settings& s, const std::string& key) {
  const std::string& text = s.at(key);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Bad(fmt::format("{}='{}' is not a number", key, text));
  }
  return value;
}

std::int64_t ParseInt(const Settings& s, const std::string& key) {
  const std::string& text = s.at(key);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Bad(fmt::format("{}='{}' is not an integer", key, text));
  }
  return value;
}

std::uint64_t ParseUnsigned(const Settings& s, const std::string& key) {
  const std::string& text = s.at(key);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Bad(fmt::format("{}='{}' is not a non-negative integer", key, text));
  }
  return value;
}

bool ParseBool(const Settings& s, const std::string& key) {
  const std::string& text = s.at(key);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  Bad(fmt::format("{}='{}' is not a boolean", key, text));
}

std::optional<double> ParseThreshold(const Settings& s, const std::string& key,
                                     std::optional<double> preset) {
  const auto it = s.find(key);
  if (it == s.end()) return preset;
  if (it->second == "none") return std::nullopt;
  return ParseDouble(s, key);
}

// A scalar broadcast to every pair, or the path of a whitespace-separated
// N x N matrix.
std::vector<double> ParseProbabilityMatrix(const Settings& s, const std::string& key,
                                           std::size_t n) {
  const std::string& text = s.at(key);
  double scalar = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), scalar);
  if (ec == std::errc() && ptr == text.data() + text.size()) {
    return std::vector<double>(n * n, scalar);
  }
  std::ifstream in(text);
  if (!in) Bad(fmt::format("{}: '{}' is neither a number nor a readable file", key, text));
  std::vector<double> m;
  double v = 0.0;
  while (in >> v) m.push_back(v);
  if (!in.eof()) Bad(fmt::format("{}: non-numeric entry in '{}'", key, text));
  if (m.size() != n * n) {
    Bad(fmt::format("{}: '{}' has {} entries, expected {}x{}", key, text, m.size(), n, n));
  }
  return m;
}

}  // namespace

const std::vector<std::string_view>& KnownKeys() {
  static const std::vector<std::string_view> keys = {
      "n_agents",     "n_targets",      "protocol",
      "eta1",         "eta2",           "eta3",
      "rho",          "epsilon",        "p_comm",
      "beta_ack",     "t_final",        "replications",
      "seed",         "record_every",   "payload",
      "reconstruction", "second_order_stores_reconstruction",
      "early_stop_window", "game_file", "out_dir",
      "jobs",         "per_replication", "dump_state",
  };
  return keys;
}

Settings DefaultSettings() {
  return {
      {"n_agents", "20"},       {"n_targets", "20"},
      {"protocol", "dfp"},      {"p_comm", "0.6"},
      {"beta_ack", "0.9"},      {"t_final", "10000"},
      {"replications", "100"},  {"seed", "0"},
      {"record_every", "1"},    {"second_order_stores_reconstruction", "false"},
      {"jobs", "1"},            {"per_replication", "false"},
      {"dump_state", "false"},
  };
}

Settings ParseConfigText(std::string_view text, std::string_view origin) {
  Settings out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (Trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      Bad(fmt::format("{}:{}: expected 'key = value'", origin, line_no));
    }
    std::string key = Trim(std::string_view(line).substr(0, eq));
    std::string value = Trim(std::string_view(line).substr(eq + 1));
    Merge(out, {{key, value}});
  }
  return out;
}

Settings LoadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Bad(fmt::format("cannot read config file '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str(), path.string());
}

void Merge(Settings& base, const Settings& overrides) {
  const auto& keys = KnownKeys();
  for (const auto& [key, value] : overrides) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      Bad(fmt::format("unknown config key '{}'", key));
    }
    base[key] = value;
  }
}

std::string FormatNumber(double x) { return fmt::format("{}", x); }

Resolved Resolve(const Settings& settings) {
  Resolved r;
  Settings s = settings;
  SimConfig& sim = r.sim;

  const std::string protocol = s.at("protocol");
  ProtocolPreset preset;
  if (protocol == "custom") {
    preset.name = "custom";
    preset.protocol.gate_kind = GateKind::kNoveltyBandAndSimilarity;
    preset.protocol.payload_kind = PayloadKind::kLimited;
    if (!s.count("rho") || !s.count("epsilon")) {
      Bad("protocol=custom needs explicit rho and epsilon");
    }
  } else {
    preset = Preset(protocol);
  }
  sim.protocol = preset.protocol;
  sim.protocol.eta1 = ParseThreshold(s, "eta1", preset.protocol.eta1);
  sim.protocol.eta2 = ParseThreshold(s, "eta2", preset.protocol.eta2);
  sim.protocol.eta3 = ParseThreshold(s, "eta3", preset.protocol.eta3);
  if (s.count("payload")) sim.protocol.payload_kind = ParsePayloadKind(s.at("payload"));
  if (s.count("reconstruction")) {
    sim.protocol.reconstruction = ParseReconstructionRule(s.at("reconstruction"));
  }
  sim.rho = s.count("rho") ? ParseDouble(s, "rho") : preset.rho;
  sim.epsilon = s.count("epsilon") ? ParseDouble(s, "epsilon") : preset.epsilon;

  if (s.count("game_file")) {
    try {
      sim.game = GameSpec(LoadMatrixGame(s.at("game_file")));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kCapacity) throw;
      Bad(e.what());
    }
    s["n_agents"] = std::to_string(sim.num_agents());
    s["n_targets"] = std::to_string(sim.num_actions());
  } else {
    const std::int64_t n = ParseInt(s, "n_agents");
    const std::int64_t k = ParseInt(s, "n_targets");
    if (n < 1 || k < 1) Bad("n_agents and n_targets must be >= 1");
    sim.game = GeneratedTargets{static_cast<std::size_t>(n), static_cast<std::size_t>(k)};
  }

  const std::size_t n = sim.num_agents();
  sim.links = LinkModel::FromMatrices(n, ParseProbabilityMatrix(s, "p_comm", n),
                                      ParseProbabilityMatrix(s, "beta_ack", n));
  sim.t_final = ParseInt(s, "t_final");
  sim.replications = ParseInt(s, "replications");
  sim.seed = ParseUnsigned(s, "seed");
  sim.record_every = ParseInt(s, "record_every");
  sim.second_order_stores_reconstruction =
      ParseBool(s, "second_order_stores_reconstruction");
  if (s.count("early_stop_window") && s.at("early_stop_window") != "none") {
    sim.early_stop_window = ParseInt(s, "early_stop_window");
  }
  sim.Validate();

  r.jobs = static_cast<int>(ParseInt(s, "jobs"));
  if (r.jobs < 1) Bad("jobs must be >= 1");
  r.per_replication = ParseBool(s, "per_replication");
  r.dump_state = ParseBool(s, "dump_state");
  if (s.count("out_dir")) {
    r.out_dir = s.at("out_dir");
  } else if (const char* env = std::getenv("DFPSIM_OUT_DIR"); env && *env) {
    r.out_dir = env;
  } else {
    r.out_dir = ".";
  }

  auto threshold_text = [](const std::optional<double>& eta) {
    return eta ? FormatNumber(*eta) : std::string("none");
  };
  s["eta1"] = threshold_text(sim.protocol.eta1);
  s["eta2"] = threshold_text(sim.protocol.eta2);
  s["eta3"] = threshold_text(sim.protocol.eta3);
  s["rho"] = FormatNumber(sim.rho);
  s["epsilon"] = FormatNumber(sim.epsilon);
  s["payload"] = std::string(PayloadKindName(sim.protocol.payload_kind));
  s["reconstruction"] = std::string(ReconstructionRuleName(sim.protocol.reconstruction));
  s["out_dir"] = r.out_dir.string();
  if (!s.count("early_stop_window")) s["early_stop_window"] = "none";
  r.effective = std::move(s);
  return r;
}

}  // namespace dfpsim::cli
