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

#include "dfpsim/comm.h"

#include <limits>

#include <fmt/format.h>

#include "dfpsim/error.h"

namespace dfpsim {

void ProtocolConfig::Validate() const {
  for (const auto& [name, eta] :
       {std::pair{"eta1", eta1}, std::pair{"eta2", eta2}, std::pair{"eta3", eta3}}) {
    if (eta && !(*eta >= 0.0)) {
      Fail(ErrorKind::kInvalidConfig, fmt::format("{}={} must be >= 0", name, *eta));
    }
  }
  if (eta1 && eta2 && !(*eta2 > *eta1)) {
    Fail(ErrorKind::kInvalidConfig,
         fmt::format("eta2={} must exceed eta1={}", *eta2, *eta1));
  }
}

ProtocolPreset Preset(std::string_view name) {
  ProtocolPreset p;
  p.name = std::string(name);
  if (name == "dfp") {
    p.protocol.gate_kind = GateKind::kAlways;
    p.protocol.payload_kind = PayloadKind::kFull;
    p.epsilon = 0.9;
    p.rho = 0.1;
  } else if (name == "vl1" || name == "vl2") {
    p.protocol.gate_kind = GateKind::kNoveltyBandAndSimilarity;
    p.protocol.payload_kind = PayloadKind::kLimited;
    p.protocol.eta1 = 0.01;
    if (name == "vl1") p.protocol.eta2 = 0.6;
    p.protocol.eta3 = 0.01;
    p.epsilon = 0.3;
    p.rho = 0.6;
  } else if (name == "vl3") {
    p.protocol.gate_kind = GateKind::kNoveltyUpperOnly;
    p.protocol.payload_kind = PayloadKind::kLimited;
    p.protocol.eta2 = 0.7;
    p.epsilon = 0.1;
    p.rho = 0.4;
  } else {
    Fail(ErrorKind::kInvalidConfig,
         fmt::format("unknown protocol '{}' (expected dfp, vl1, vl2, vl3)", name));
  }
  return p;
}

bool ShouldTransmit(double novelty, double similarity,
                    const ProtocolConfig& cfg) {
  const double upper = cfg.eta2.value_or(std::numeric_limits<double>::infinity());
  switch (cfg.gate_kind) {
    case GateKind::kAlways:
      return true;
    case GateKind::kNoveltyBandAndSimilarity:
      return cfg.eta1.value_or(0.0) <= novelty && novelty <= upper &&
             similarity >= cfg.eta3.value_or(0.0);
    case GateKind::kNoveltyUpperOnly:
      return novelty <= upper;
  }
  return false;
}

Payload BuildPayload(const AgentState& sender, const ProtocolConfig& cfg) {
  if (cfg.payload_kind == PayloadKind::kLimited) {
    return ExtractLimitedPayload(sender.own_freq());
  }
  return FullPayload{sender.own_freq()};
}

MixedStrategy DecodePayload(const Payload& payload, std::size_t num_actions,
                            ReconstructionRule rule) {
  if (const auto* full = std::get_if<FullPayload>(&payload)) {
    if (full->freq.size() != num_actions) {
      Fail(ErrorKind::kMalformedPayload, "full payload length differs from K");
    }
    return full->freq;
  }
  const auto& limited = std::get<LimitedPayload>(payload);
  return Reconstruct(limited.upsilon, limited.kappa, num_actions, rule);
}

std::string_view GateKindName(GateKind kind) {
  switch (kind) {
    case GateKind::kAlways:
      return "always";
    case GateKind::kNoveltyBandAndSimilarity:
      return "novelty_band_and_similarity";
    case GateKind::kNoveltyUpperOnly:
      return "novelty_upper_only";
  }
  return "?";
}

std::string_view PayloadKindName(PayloadKind kind) {
  return kind == PayloadKind::kFull ? "full" : "limited";
}

std::string_view ReconstructionRuleName(ReconstructionRule rule) {
  return rule == ReconstructionRule::kFullSupport ? "full_support"
                                                  : "uniform_remainder";
}

PayloadKind ParsePayloadKind(std::string_view name) {
  if (name == "full") return PayloadKind::kFull;
  if (name == "limited") return PayloadKind::kLimited;
  Fail(ErrorKind::kInvalidConfig,
       fmt::format("unknown payload '{}' (expected full or limited)", name));
}

ReconstructionRule ParseReconstructionRule(std::string_view name) {
  if (name == "full_support") return ReconstructionRule::kFullSupport;
  if (name == "uniform_remainder") return ReconstructionRule::kUniformRemainder;
  Fail(ErrorKind::kInvalidConfig,
       fmt::format("unknown reconstruction '{}' (expected full_support or "
                   "uniform_remainder)",
                   name));
}

}  // namespace dfpsim
