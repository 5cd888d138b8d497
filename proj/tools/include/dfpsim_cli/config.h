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

#ifndef DFPSIM_CLI_CONFIG_H_
#define DFPSIM_CLI_CONFIG_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dfpsim/engine.h"

namespace dfpsim::cli {

// Flat key -> value settings. Later layers override earlier ones:
// built-in defaults, then a config file, then command-line flags.
using Settings = std::map<std::string, std::string>;

// Every key accepted in a config file or as a flag.
const std::vector<std::string_view>& KnownKeys();
Settings DefaultSettings();

// `key = value` lines; '#' starts a comment. Unknown keys and a missing file
// are kInvalidConfig errors.
Settings ParseConfigText(std::string_view text, std::string_view origin);
Settings LoadConfigFile(const std::filesystem::path& path);

// Applies `overrides` on top of `base`, validating the keys.
void Merge(Settings& base, const Settings& overrides);

// A config resolved against its protocol preset.
struct Resolved {
  SimConfig sim;
  Settings effective;  // the settings with preset-derived values filled in
  int jobs = 1;
  bool per_replication = false;
  bool dump_state = false;
  std::filesystem::path out_dir;
};

// Throws kInvalidConfig (or kCapacity for oversized game files).
Resolved Resolve(const Settings& settings);

// Shortest round-trip text for a double.
std::string FormatNumber(double x);

}  // namespace dfpsim::cli

#endif  // DFPSIM_CLI_CONFIG_H_
