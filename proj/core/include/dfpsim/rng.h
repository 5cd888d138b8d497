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

#ifndef DFPSIM_RNG_H_
#define DFPSIM_RNG_H_

#include <cstdint>
#include <random>

namespace dfpsim {

// One independent stream per kind of randomness in a replication.
enum class StreamPurpose : std::uint64_t {
  kScenario = 1,
  kInitialActions = 2,
  kInertia = 3,
  kTieBreak = 4,
  kLink = 5,
  kAck = 6,
  kTest = 7,
};

// SplitMix64 finaliser.
std::uint64_t Mix64(std::uint64_t x);

// Stream seed = Mix64(Mix64(seed ^ Mix64(replication + 1)) + purpose * phi),
// where phi is the 64-bit golden-ratio constant.
std::uint64_t DeriveStreamSeed(std::uint64_t seed, std::uint64_t replication,
                               StreamPurpose purpose);

class RngStream {
 public:
  explicit RngStream(std::uint64_t stream_seed) : engine_(stream_seed) {}
  RngStream(std::uint64_t seed, std::uint64_t replication,
            StreamPurpose purpose)
      : engine_(DeriveStreamSeed(seed, replication, purpose)) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }
  // True with probability p; always consumes exactly one draw.
  bool Bernoulli(double p) { return Uniform01() < p; }
  // Uniform on {0, ..., n - 1} from a single draw; n >= 1.
  std::uint64_t UniformIndex(std::uint64_t n);
  double Normal(double mean, double stddev);

  // Number of raw 64-bit words consumed so far.
  std::uint64_t draws() const { return draws_; }

  // UniformRandomBitGenerator interface, so std distributions can draw from
  // the stream while it keeps counting.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() {
    ++draws_;
    return engine_();
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace dfpsim

#endif  // DFPSIM_RNG_H_
