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

#ifndef DFPSIM_REPORT_H_
#define DFPSIM_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "dfpsim/beliefs.h"
#include "dfpsim/engine.h"
#include "dfpsim/metrics.h"

namespace dfpsim {

inline constexpr std::string_view kTraceCsvHeader =
    "step,mean_dist_ne,mean_belief_err,link_utilization,coverage";

// One row per recorded step. Doubles use the shortest round-trip form; the
// output is byte-stable for identical inputs.
std::string FormatAggregateCsv(std::span<const AggregateRecord> records);
std::string FormatTraceCsv(std::span<const TraceRecord> records);

// One JSON object per line and agent: id, last action, own frequency,
// estimates and second-order beliefs keyed by peer id.
std::string FormatStatesJsonLines(std::span<const AgentState> states,
                                  std::uint64_t replication);

// Writes to a sibling temporary file and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace dfpsim

#endif  // DFPSIM_REPORT_H_
