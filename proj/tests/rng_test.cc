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

#include "goodvibes/rng.h"

#include <gtest/gtest.h>

#include <set>

namespace goodvibes {
namespace {

// Reference values from an independent MT19937-64 / SplitMix64 model
// (tests/fixtures/gen_schedules.py).
TEST(RngTest, MatchesReferenceEngine) {
  EXPECT_EQ(MixSeed(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(MixSeed(7), 7191089600892374487ULL);
  EXPECT_EQ(Rng(42).NextU64(), 13930160852258120406ULL);
  EXPECT_EQ(Rng(MixSeed(7)).NextU64(), 15535014154851510687ULL);
  EXPECT_DOUBLE_EQ(Rng(99).UniformDouble(), 0.4345445144345933);
}

TEST(RngTest, UniformIntMatchesReference) {
  Rng rng(42);
  std::vector<int64_t> draws;
  for (int i = 0; i < 5; ++i) draws.push_back(rng.UniformInt(1, 6));
  EXPECT_EQ(draws, (std::vector<int64_t>{1, 3, 5, 1, 6}));
}

TEST(RngTest, UniformIntStaysInRange) {
  Rng rng(3);
  std::set<int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const int64_t v = rng.UniformInt(-2, 2);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 2);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 5u);
  EXPECT_EQ(rng.UniformInt(9, 9), 9);
}

TEST(RngTest, DegenerateBernoulliConsumesNoDraw) {
  Rng a(5);
  Rng b(5);
  EXPECT_FALSE(a.Bernoulli(0.0));
  EXPECT_TRUE(a.Bernoulli(1.0));
  EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngTest, ForkDependsOnlyOnSeedAndStream) {
  Rng a(11);
  Rng b(11);
  a.NextU64();
  EXPECT_EQ(a.Fork(3).NextU64(), b.Fork(3).NextU64());
  EXPECT_NE(b.Fork(3).NextU64(), b.Fork(4).NextU64());
}

TEST(RngTest, FillBytesIsLittleEndianWords) {
  Rng a(8);
  Rng b(8);
  const std::vector<uint8_t> bytes = a.Bytes(8);
  uint64_t word = b.NextU64();
  for (uint8_t byte : bytes) {
    EXPECT_EQ(byte, word & 0xff);
    word >>= 8;
  }
}

}  // namespace
}  // namespace goodvibes
