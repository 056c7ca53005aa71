//
// Copyright 2026 The LEPA Authors
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
//

#ifndef LEPA_RANDOM_HPP_
#define LEPA_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace lepa {

// Seeded random source. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the conversions to real and bounded integer
// values are done here rather than through <random> distributions, whose
// algorithms differ between standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1); never returns either endpoint.
  double UniformOpen01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Uniform integer on the closed interval [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finaliser; used to derive independent stream seeds from a base
// seed and a stream index.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace lepa

#endif  // LEPA_RANDOM_HPP_
