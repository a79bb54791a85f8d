// Copyright 2026 The GoodVibes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GOODVIBES_RNG_H_
#define GOODVIBES_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace goodvibes {

// Seeded random source. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the mappings to integers, doubles and bytes are
// implemented here rather than with std::*_distribution so that results are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }

  // Uniform over [lo, hi], both inclusive. Requires lo <= hi.
  int64_t UniformInt(int64_t lo, int64_t hi);

  // Uniform over [0, 1) with 53 bits of precision.
  double UniformDouble();

  // True with probability p. p <= 0 never fires, p >= 1 always fires.
  bool Bernoulli(double p);

  void FillBytes(uint8_t* out, size_t n);
  std::vector<uint8_t> Bytes(size_t n);

  // Independent child stream. Depends only on this stream's seed and
  // `stream`, not on how many values have been drawn so far.
  Rng Fork(uint64_t stream) const;

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to derive well-mixed seeds.
uint64_t MixSeed(uint64_t value);

}  // namespace goodvibes

#endif  // GOODVIBES_RNG_H_
