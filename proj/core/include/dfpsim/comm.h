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

#ifndef DFPSIM_COMM_H_
#define DFPSIM_COMM_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "dfpsim/beliefs.h"
#include "dfpsim/strategy.h"

namespace dfpsim {

enum class GateKind {
  kAlways,
  kNoveltyBandAndSimilarity,  // eta1 <= h_ii <= eta2 and h_ij >= eta3
  kNoveltyUpperOnly,          // h_ii <= eta2
};

enum class PayloadKind { kFull, kLimited };

// Absent thresholds disable the corresponding bound: eta1 -> 0, eta2 -> +inf,
// eta3 -> 0.
struct ProtocolConfig {
  std::optional<double> eta1;
  std::optional<double> eta2;
  std::optional<double> eta3;
  PayloadKind payload_kind = PayloadKind::kFull;
  ReconstructionRule reconstruction = ReconstructionRule::kUniformRemainder;
  GateKind gate_kind = GateKind::kAlways;

  // Throws kInvalidConfig on negative thresholds or eta2 <= eta1.
  void Validate() const;
};

// A protocol preset together with the dynamics parameters it was tuned with.
struct ProtocolPreset {
  std::string name;
  ProtocolConfig protocol;
  double rho = 0.0;
  double epsilon = 0.0;
};

// "dfp", "vl1", "vl2" or "vl3"; throws kInvalidConfig otherwise.
ProtocolPreset Preset(std::string_view name);

bool ShouldTransmit(double novelty, double similarity,
                    const ProtocolConfig& cfg);

struct FullPayload {
  MixedStrategy freq;
};

using Payload = std::variant<FullPayload, LimitedPayload>;

Payload BuildPayload(const AgentState& sender, const ProtocolConfig& cfg);

// What the receiver stores as its new estimate of the sender.
MixedStrategy DecodePayload(const Payload& payload, std::size_t num_actions,
                            ReconstructionRule rule);

std::string_view GateKindName(GateKind kind);
std::string_view PayloadKindName(PayloadKind kind);
std::string_view ReconstructionRuleName(ReconstructionRule rule);
PayloadKind ParsePayloadKind(std::string_view name);
ReconstructionRule ParseReconstructionRule(std::string_view name);

}  // namespace dfpsim

#endif  // DFPSIM_COMM_H_
