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

#include "dfpsim/report.h"

#include <cstdio>
#include <fstream>
#include <system_error>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "dfpsim/error.h"

namespace dfpsim {
namespace {

std::string Num(double x) { return fmt::format("{}", x); }

std::string Vec(const MixedStrategy& f) {
  return fmt::format("[{}]", fmt::join(f.probabilities(), ","));
}

}  // namespace

std::string FormatAggregateCsv(std::span<const AggregateRecord> records) {
  std::string out(kTraceCsvHeader);
  out += '\n';
  for (const AggregateRecord& r : records) {
    out += fmt::format("{},{},{},{},{}\n", r.step, Num(r.mean_dist_ne),
                       Num(r.mean_belief_err), Num(r.link_utilization), Num(r.coverage));
  }
  return out;
}

std::string FormatTraceCsv(std::span<const TraceRecord> records) {
  std::string out(kTraceCsvHeader);
  out += '\n';
  for (const TraceRecord& r : records) {
    out += fmt::format("{},{},{},{},{}\n", r.step, Num(r.mean_dist_ne),
                       Num(r.mean_belief_err), Num(r.link_utilization), r.coverage);
  }
  return out;
}

std::string FormatStatesJsonLines(std::span<const AgentState> states,
                                  std::uint64_t replication) {
  std::string out;
  for (const AgentState& s : states) {
    std::string estimates;
    std::string second;
    for (AgentId j = 0; j < s.num_agents(); ++j) {
      if (j == s.id()) continue;
      const char* sep = estimates.empty() ? "" : ",";
      estimates += fmt::format("{}\"{}\":{}", sep, j, Vec(s.estimate(j)));
      second += fmt::format("{}\"{}\":{}", sep, j, Vec(s.second_order(j)));
    }
    out += fmt::format(
        "{{\"replication\":{},\"agent\":{},\"last_action\":{},\"own_freq\":{},"
        "\"estimates\":{{{}}},\"second_order\":{{{}}}}}\n",
        replication, s.id(), s.last_action(), Vec(s.own_freq()), estimates, second);
  }
  return out;
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorKind::kIo, fmt::format("cannot write '{}'", tmp.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      Fail(ErrorKind::kIo, fmt::format("short write to '{}'", tmp.string()));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    Fail(ErrorKind::kIo, fmt::format("cannot rename into '{}'", path.string()));
  }
}

}  // namespace dfpsim
