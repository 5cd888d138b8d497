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

#include "dfpsim/rng.h"

namespace dfpsim {

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveStreamSeed(std::uint64_t seed, std::uint64_t replication,
                               StreamPurpose purpose) {
  const std::uint64_t rep = Mix64(seed ^ Mix64(replication + 1));
  return Mix64(rep + static_cast<std::uint64_t>(purpose) * 0x9e3779b97f4a7c15ULL);
}

double RngStream::Uniform01() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::UniformIndex(std::uint64_t n) {
  const auto k = static_cast<std::uint64_t>(Uniform01() * static_cast<double>(n));
  return k < n ? k : n - 1;
}

double RngStream::Normal(double mean, double stddev) {
  std::normal_distribution<double> dist(mean, stddev);
  return dist(*this);
}

}  // namespace dfpsim
