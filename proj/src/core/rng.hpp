// Copyright 2026 The lcpseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LCPSEG_CORE_RNG_HPP_
#define LCPSEG_CORE_RNG_HPP_

#include <cstdint>
#include <random>

namespace lcpseg {

// splitmix64 finalizer; derives independent stream seeds from one root seed
// so per-line randomness does not depend on processing order.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic random source over std::mt19937_64 (whose output sequence is
// fixed by the standard). Draws are counted so a consumer can record the
// stream position a decision was taken at.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed), seed_(seed) {}

  uint64_t next_u64() {
    ++draws_;
    return engine_();
  }

  int next_bit() { return static_cast<int>(next_u64() & 1u); }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // True with probability p; p = 0 never draws true, p = 1 always does.
  bool bernoulli(double p) { return next_unit() < p; }

  uint64_t seed() const { return seed_; }
  uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  uint64_t seed_;
  uint64_t draws_ = 0;
};

}  // namespace lcpseg

#endif  // LCPSEG_CORE_RNG_HPP_
