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

#include "dfpsim_cli/commands.h"

#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "dfpsim/engine.h"
#include "dfpsim/error.h"
#include "dfpsim/oracle.h"
#include "dfpsim/report.h"
#include "dfpsim_cli/config.h"

namespace dfpsim::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Keys a sweep may vary, in the order they appear in output names.
const std::vector<std::string> kSweepKeys = {"eta1", "eta2", "eta3", "rho", "epsilon"};

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec kValueFlags[] = {
    {"--protocol", "protocol", "dfp, vl1, vl2, vl3 or custom"},
    {"--agents", "n_agents", "number of agents N"},
    {"--targets", "n_targets", "number of targets K"},
    {"--steps", "t_final", "steps per replication"},
    {"--reps", "replications", "number of replications"},
    {"--seed", "seed", "master seed"},
    {"--record-every", "record_every", "record metrics every n steps"},
    {"--eta1", "eta1", "lower novelty bound, or 'none'"},
    {"--eta2", "eta2", "upper novelty bound, or 'none'"},
    {"--eta3", "eta3", "belief-similarity bound, or 'none'"},
    {"--rho", "rho", "fading memory constant"},
    {"--epsilon", "epsilon", "inertia probability"},
    {"--p-comm", "p_comm", "link success probability or matrix file"},
    {"--beta-ack", "beta_ack", "acknowledgement probability or matrix file"},
    {"--payload", "payload", "full or limited"},
    {"--reconstruction", "reconstruction", "full_support or uniform_remainder"},
    {"--early-stop-window", "early_stop_window", "stop after a pure NE persists this long"},
    {"--game-file", "game_file", "explicit game file instead of target assignment"},
    {"--out-dir", "out_dir", "output directory (default $DFPSIM_OUT_DIR or .)"},
    {"--jobs", "jobs", "concurrent replications"},
};

constexpr FlagSpec kBoolFlags[] = {
    {"--second-order-stores-reconstruction", "second_order_stores_reconstruction",
     "acknowledged second-order beliefs store the receiver's reconstruction"},
    {"--per-replication", "per_replication", "also write one CSV per replication"},
    {"--dump-state", "dump_state", "write final agent states as JSON lines"},
};

struct SimFlags {
  std::string config_path;
  Settings overrides;
};

void AddSimFlags(CLI::App* app, SimFlags& flags) {
  app->add_option("--config", flags.config_path, "key = value config file");
  for (const FlagSpec& f : kValueFlags) {
    const std::string key = f.key;
    app->add_option_function<std::string>(
        f.flag, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, f.help);
  }
  for (const FlagSpec& f : kBoolFlags) {
    const std::string key = f.key;
    app->add_flag_function(
        f.flag, [&flags, key](std::int64_t) { flags.overrides[key] = "true"; }, f.help);
  }
}

Settings LayeredSettings(const SimFlags& flags) {
  Settings s = DefaultSettings();
  if (!flags.config_path.empty()) Merge(s, LoadConfigFile(flags.config_path));
  Merge(s, flags.overrides);
  return s;
}

ordered_json SummaryJson(const std::string& command, const Resolved& r,
                         const ExperimentResult& result) {
  ordered_json j;
  j["command"] = command;
  j["seed"] = r.sim.seed;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : r.effective) cfg[k] = v;
  cfg["gate"] = std::string(GateKindName(r.sim.protocol.gate_kind));
  j["config"] = cfg;
  j["replications"] = result.replications.size();
  j["converged_replications"] = result.converged_count();
  j["attempts_total"] = result.attempts_total();
  j["successes_total"] = result.successes_total();
  std::int64_t acks = 0;
  std::int64_t steps = 0;
  for (const auto& rep : result.replications) {
    acks += rep.acks_total;
    steps += rep.steps_run;
  }
  j["acks_total"] = acks;
  j["steps_total"] = steps;
  j["mean_link_utilization"] = result.mean_link_utilization(r.sim.num_agents());
  if (!result.aggregate.empty()) {
    const AggregateRecord& last = result.aggregate.back();
    j["final"] = {{"step", last.step},
                  {"mean_dist_ne", last.mean_dist_ne},
                  {"mean_belief_err", last.mean_belief_err},
                  {"link_utilization", last.link_utilization},
                  {"coverage", last.coverage}};
  }
  return j;
}

// Writes `<stem>.csv` and `<stem>_summary.json` plus the optional extras.
void WriteOutputs(const fs::path& dir, const std::string& stem, const std::string& command,
                  const Resolved& r, const ExperimentResult& result) {
  fs::create_directories(dir);
  WriteFileAtomic(dir / (stem + ".csv"), FormatAggregateCsv(result.aggregate));
  if (r.per_replication) {
    const fs::path reps = dir / (stem + "_replications");
    fs::create_directories(reps);
    for (std::size_t i = 0; i < result.replications.size(); ++i) {
      WriteFileAtomic(reps / fmt::format("rep_{:04d}.csv", i),
                      FormatTraceCsv(result.replications[i].trace));
    }
  }
  if (r.dump_state) {
    std::string states;
    for (std::size_t i = 0; i < result.replications.size(); ++i) {
      states += FormatStatesJsonLines(result.replications[i].final_states, i);
    }
    WriteFileAtomic(dir / (stem + "_states.jsonl"), states);
  }
  WriteFileAtomic(dir / (stem + "_summary.json"),
                  SummaryJson(command, r, result).dump(2) + "\n");
}

int CmdRun(const SimFlags& flags, std::ostream& out) {
  const Resolved r = Resolve(LayeredSettings(flags));
  const ExperimentResult result = RunExperiment(r.sim, r.jobs);
  WriteOutputs(r.out_dir, "trace", "run", r, result);
  out << fmt::format("wrote {} ({} rows), converged {}/{}, mean link utilization {:.4f}\n",
                     (r.out_dir / "trace.csv").string(), result.aggregate.size(),
                     result.converged_count(), result.replications.size(),
                     result.mean_link_utilization(r.sim.num_agents()));
  return kExitOk;
}

std::vector<Settings> ExpandGrid(const std::vector<std::string>& grid,
                                 const std::vector<std::string>& points) {
  auto check_key = [](const std::string& key) {
    if (std::find(kSweepKeys.begin(), kSweepKeys.end(), key) == kSweepKeys.end()) {
      Fail(ErrorKind::kInvalidConfig,
           fmt::format("sweep key '{}' not in {{eta1, eta2, eta3, rho, epsilon}}", key));
    }
  };
  std::vector<Settings> combos = {Settings{}};
  for (const std::string& axis : grid) {
    const auto eq = axis.find('=');
    if (eq == std::string::npos) {
      Fail(ErrorKind::kInvalidConfig, fmt::format("--grid '{}' is not key=v1,v2,...", axis));
    }
    const std::string key = axis.substr(0, eq);
    check_key(key);
    std::vector<std::string> values;
    std::stringstream list(axis.substr(eq + 1));
    for (std::string v; std::getline(list, v, ',');) {
      if (!v.empty()) values.push_back(v);
    }
    std::vector<Settings> next;
    for (const Settings& c : combos) {
      for (const std::string& v : values) {
        Settings e = c;
        e[key] = v;
        next.push_back(std::move(e));
      }
    }
    combos = std::move(next);
  }
  if (!points.empty()) {
    std::vector<Settings> next;
    for (const Settings& c : combos) {
      for (const std::string& point : points) {
        Settings e = c;
        std::stringstream fields(point);
        for (std::string kv; fields >> kv;) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) {
            Fail(ErrorKind::kInvalidConfig, fmt::format("--point entry '{}' is not key=value", kv));
          }
          check_key(kv.substr(0, eq));
          e[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        next.push_back(std::move(e));
      }
    }
    combos = std::move(next);
  }
  if (grid.empty() && points.empty()) combos.clear();
  for (const Settings& c : combos) {
    if (c.empty()) Fail(ErrorKind::kInvalidConfig, "sweep grid point sets no parameter");
  }
  return combos;
}

std::string PointName(const Settings& point) {
  std::string name;
  for (const std::string& key : kSweepKeys) {
    const auto it = point.find(key);
    if (it == point.end()) continue;
    if (!name.empty()) name += '_';
    name += key + "-" + it->second;
  }
  return name;
}

int CmdSweep(const SimFlags& flags, const std::vector<std::string>& grid,
             const std::vector<std::string>& points, std::ostream& out) {
  const Settings base = LayeredSettings(flags);
  const std::vector<Settings> combos = ExpandGrid(grid, points);
  if (combos.empty()) Fail(ErrorKind::kInvalidConfig, "sweep grid is empty");

  // Resolve every point before running any, so a bad point leaves no output.
  std::vector<std::pair<std::string, Resolved>> resolved;
  std::set<std::string> names;
  for (const Settings& point : combos) {
    Settings s = base;
    Merge(s, point);
    std::string name = PointName(point);
    if (!names.insert(name).second) {
      Fail(ErrorKind::kInvalidConfig, fmt::format("duplicate sweep point '{}'", name));
    }
    resolved.emplace_back(std::move(name), Resolve(s));
  }

  ordered_json manifest;
  manifest["command"] = "sweep";
  manifest["points"] = ordered_json::array();
  fs::path dir;
  for (const auto& [name, r] : resolved) {
    dir = r.out_dir;
    const ExperimentResult result = RunExperiment(r.sim, r.jobs);
    WriteOutputs(r.out_dir, name, "sweep", r, result);
    ordered_json entry;
    entry["name"] = name;
    entry["csv"] = name + ".csv";
    entry["summary"] = name + "_summary.json";
    for (const std::string& key : kSweepKeys) entry["params"][key] = r.effective.at(key);
    manifest["points"].push_back(entry);
    out << fmt::format("wrote {}\n", (r.out_dir / (name + ".csv")).string());
  }
  WriteFileAtomic(dir / "manifest.json", manifest.dump(2) + "\n");
  return kExitOk;
}

int CmdCheckNe(std::size_t agents, std::size_t targets, std::uint64_t seed,
               const std::string& game_file, std::ostream& out) {
  std::optional<GameSpec> game;
  if (!game_file.empty()) {
    try {
      game.emplace(LoadMatrixGame(game_file));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kCapacity) throw;
      Fail(ErrorKind::kInvalidConfig, e.what());
    }
    out << fmt::format("game: matrix N={} K={}\n", game->num_agents(), game->num_actions());
  } else {
    if (agents < 1 || targets < 1) Fail(ErrorKind::kInvalidConfig, "agents and targets must be >= 1");
    RngStream scenario(seed, 0, StreamPurpose::kScenario);
    game.emplace(GenerateScenario(agents, targets, scenario));
    out << fmt::format("game: target-assignment N={} K={} seed={}\n", agents, targets, seed);
  }

  const std::vector<Profile> ne = EnumeratePureNe(*game);
  out << fmt::format("pure_ne: {}\n", ne.size());
  for (const Profile& p : ne) out << fmt::format("  {}\n", fmt::join(p, " "));
  const bool assumption = CheckAssumptionOne(*game);
  const WeakAcyclicityReport wa = CheckWeakAcyclicity(*game);
  std::size_t longest = 0;
  for (std::uint64_t p = 0; p < wa.next_hop.size(); ++p) {
    const auto path = wa.Witness(p);
    if (!path.empty()) longest = std::max(longest, path.size() - 1);
  }
  out << fmt::format("weakly_acyclic: {}\n", wa.weakly_acyclic);
  out << fmt::format("longest_witness_path: {}\n", longest);
  out << fmt::format("assumption1: {}\n", assumption);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decentralized fictitious play over lossy networks", "dfpsim"};
  app.require_subcommand(1);

  SimFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run replications and write the aggregated trace");
  AddSimFlags(run, run_flags);

  SimFlags sweep_flags;
  std::vector<std::string> grid;
  std::vector<std::string> points;
  CLI::App* sweep = app.add_subcommand("sweep", "run one experiment per parameter point");
  AddSimFlags(sweep, sweep_flags);
  sweep->add_option("--grid", grid, "key=v1,v2,... (cartesian axes)");
  sweep->add_option("--point", points, "'key=v key=v ...' explicit points");

  std::size_t agents = 3;
  std::size_t targets = 3;
  std::uint64_t seed = 0;
  std::string game_file;
  CLI::App* check = app.add_subcommand("check-ne", "enumerate pure NE of a small game");
  check->add_option("--agents", agents, "number of agents")->capture_default_str();
  check->add_option("--targets", targets, "number of targets")->capture_default_str();
  check->add_option("--seed", seed, "scenario seed")->capture_default_str();
  check->add_option("--game-file", game_file, "explicit game file");

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dfpsim: " << e.what() << "\n";
    return kExitBadConfig;
  }

  try {
    if (run->parsed()) return CmdRun(run_flags, out);
    if (sweep->parsed()) return CmdSweep(sweep_flags, grid, points, out);
    return CmdCheckNe(agents, targets, seed, game_file, out);
  } catch (const Error& e) {
    err << "dfpsim: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::kCapacity:
        return kExitCapacity;
      case ErrorKind::kInvalidConfig:
      case ErrorKind::kInvalidInput:
      case ErrorKind::kMalformedPayload:
        return kExitBadConfig;
      default:
        return kExitFailure;
    }
  } catch (const std::exception& e) {
    err << "dfpsim: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace dfpsim::cli
