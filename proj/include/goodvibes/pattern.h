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

#ifndef GOODVIBES_PATTERN_H_
#define GOODVIBES_PATTERN_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace goodvibes {

// A vibration pattern: an ordered list of burst-group sizes. "1 3" is one
// burst, a long pause, then three bursts. Instances always satisfy the
// bounds below; there is no way to construct an invalid one.
class PatternSpec {
 public:
  static constexpr int kMaxGroups = 4;
  static constexpr int kMaxBurstsPerGroup = 9;

  // Accepts whitespace-separated decimal counts. Throws Error with
  // kEmptyPattern, kInvalidToken or kOutOfRange.
  static PatternSpec Parse(std::string_view text);
  static PatternSpec FromGroups(std::vector<int> groups);

  const std::vector<int>& groups() const { return groups_; }
  int group_count() const { return static_cast<int>(groups_.size()); }
  int total_bursts() const;

  // Canonical form: counts joined by single spaces.
  std::string ToString() const;

  friend bool operator==(const PatternSpec&, const PatternSpec&) = default;
  friend auto operator<=>(const PatternSpec&, const PatternSpec&) = default;

 private:
  explicit PatternSpec(std::vector<int> groups) : groups_(std::move(groups)) {}

  std::vector<int> groups_;
};

// Burst duration and the two pause lengths, all in milliseconds.
struct TimingParams {
  int64_t burst_ms = 60;
  int64_t intra_gap_ms = 60;
  int64_t inter_gap_ms = 200;

  // Throws kInvalidTiming unless all are positive and groups are separable
  // (inter_gap_ms > intra_gap_ms).
  void Validate() const;

  friend bool operator==(const TimingParams&, const TimingParams&) = default;
};

struct Burst {
  int64_t start_ms = 0;
  int64_t duration_ms = 0;

  int64_t end_ms() const { return start_ms + duration_ms; }
  friend bool operator==(const Burst&, const Burst&) = default;
};

// Concrete burst schedule. Bursts are sorted, non-overlapping, and the first
// one starts at 0.
class VibrationTimeline {
 public:
  // Throws kInvalidArgument if `bursts` violates the invariants.
  static VibrationTimeline FromBursts(std::vector<Burst> bursts);

  const std::vector<Burst>& bursts() const { return bursts_; }
  size_t size() const { return bursts_.size(); }

  // "start+duration" pairs joined by commas, e.g. "0+60,120+60".
  std::string ToString() const;
  static VibrationTimeline Parse(std::string_view text);

  friend bool operator==(const VibrationTimeline&,
                         const VibrationTimeline&) = default;

 private:
  explicit VibrationTimeline(std::vector<Burst> bursts)
      : bursts_(std::move(bursts)) {}

  std::vector<Burst> bursts_;
};

VibrationTimeline RenderTimeline(const PatternSpec& spec,
                                 const TimingParams& timing = {});

// End of the final burst.
int64_t TotalDuration(const VibrationTimeline& timeline);

// Closed form of TotalDuration(RenderTimeline(spec, timing)).
int64_t ExpectedDuration(const PatternSpec& spec, const TimingParams& timing);

bool TimelinesMatch(const VibrationTimeline& observed,
                    const VibrationTimeline& expected,
                    int64_t jitter_tolerance_ms);

// All patterns with at most `max_groups` groups of at most
// `max_bursts_per_group` bursts, shorter patterns first and lexicographic
// within a length.
std::vector<PatternSpec> EnumeratePatterns(int max_groups,
                                           int max_bursts_per_group);

}  // namespace goodvibes

#endif  // GOODVIBES_PATTERN_H_
