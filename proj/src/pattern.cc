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

#include "goodvibes/pattern.h"

#include <charconv>
#include <cstdlib>
#include <numeric>

#include "goodvibes/error.h"

namespace goodvibes {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

std::vector<std::string_view> SplitWhitespace(std::string_view text) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

void CheckGroups(const std::vector<int>& groups) {
  if (groups.empty()) Throw(ErrorCode::kEmptyPattern, "pattern has no groups");
  if (static_cast<int>(groups.size()) > PatternSpec::kMaxGroups) {
    Throw(ErrorCode::kOutOfRange,
          "pattern has " + std::to_string(groups.size()) +
              " groups, at most " +
              std::to_string(PatternSpec::kMaxGroups) + " allowed");
  }
  for (int count : groups) {
    if (count < 1 || count > PatternSpec::kMaxBurstsPerGroup) {
      Throw(ErrorCode::kOutOfRange,
            "burst count " + std::to_string(count) + " outside [1, " +
                std::to_string(PatternSpec::kMaxBurstsPerGroup) + "]");
    }
  }
}

}  // namespace

PatternSpec PatternSpec::Parse(std::string_view text) {
  std::vector<std::string_view> tokens = SplitWhitespace(text);
  if (tokens.empty()) Throw(ErrorCode::kEmptyPattern, "empty pattern");
  std::vector<int> groups;
  groups.reserve(tokens.size());
  for (std::string_view token : tokens) {
    long long value = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc::result_out_of_range) {
      Throw(ErrorCode::kOutOfRange,
            "burst count '" + std::string(token) + "' out of range");
    }
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      Throw(ErrorCode::kInvalidToken,
            "'" + std::string(token) + "' is not an integer");
    }
    if (value < 1 || value > kMaxBurstsPerGroup) {
      Throw(ErrorCode::kOutOfRange, "burst count " + std::string(token) +
                                        " outside [1, " +
                                        std::to_string(kMaxBurstsPerGroup) +
                                        "]");
    }
    groups.push_back(static_cast<int>(value));
  }
  CheckGroups(groups);
  return PatternSpec(std::move(groups));
}

PatternSpec PatternSpec::FromGroups(std::vector<int> groups) {
  CheckGroups(groups);
  return PatternSpec(std::move(groups));
}

int PatternSpec::total_bursts() const {
  return std::accumulate(groups_.begin(), groups_.end(), 0);
}

std::string PatternSpec::ToString() const {
  std::string out;
  for (size_t i = 0; i < groups_.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(groups_[i]);
  }
  return out;
}

void TimingParams::Validate() const {
  if (burst_ms <= 0 || intra_gap_ms <= 0 || inter_gap_ms <= 0) {
    Throw(ErrorCode::kInvalidTiming, "timing values must be positive");
  }
  if (inter_gap_ms <= intra_gap_ms) {
    Throw(ErrorCode::kInvalidTiming,
          "inter-group gap must exceed the intra-group gap");
  }
}

VibrationTimeline VibrationTimeline::FromBursts(std::vector<Burst> bursts) {
  if (bursts.empty()) {
    Throw(ErrorCode::kInvalidArgument, "timeline has no bursts");
  }
  if (bursts.front().start_ms != 0) {
    Throw(ErrorCode::kInvalidArgument, "timeline must start at 0");
  }
  for (size_t i = 0; i < bursts.size(); ++i) {
    if (bursts[i].duration_ms <= 0) {
      Throw(ErrorCode::kInvalidArgument, "burst duration must be positive");
    }
    if (i > 0 && bursts[i].start_ms < bursts[i - 1].end_ms()) {
      Throw(ErrorCode::kInvalidArgument, "bursts overlap or are unsorted");
    }
  }
  return VibrationTimeline(std::move(bursts));
}

std::string VibrationTimeline::ToString() const {
  std::string out;
  for (size_t i = 0; i < bursts_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(bursts_[i].start_ms);
    out += '+';
    out += std::to_string(bursts_[i].duration_ms);
  }
  return out;
}

VibrationTimeline VibrationTimeline::Parse(std::string_view text) {
  std::vector<Burst> bursts;
  size_t pos = 0;
  auto read_int = [&](char terminator) -> int64_t {
    int64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) {
      Throw(ErrorCode::kParse, "malformed timeline '" + std::string(text) + "'");
    }
    pos = static_cast<size_t>(ptr - text.data());
    if (terminator != '\0') {
      if (pos >= text.size() || text[pos] != terminator) {
        Throw(ErrorCode::kParse,
              "malformed timeline '" + std::string(text) + "'");
      }
      ++pos;
    }
    return value;
  };
  while (pos < text.size()) {
    Burst burst;
    burst.start_ms = read_int('+');
    burst.duration_ms = read_int('\0');
    bursts.push_back(burst);
    if (pos < text.size()) {
      if (text[pos] != ',') {
        Throw(ErrorCode::kParse,
              "malformed timeline '" + std::string(text) + "'");
      }
      ++pos;
    }
  }
  return FromBursts(std::move(bursts));
}

VibrationTimeline RenderTimeline(const PatternSpec& spec,
                                 const TimingParams& timing) {
  timing.Validate();
  std::vector<Burst> bursts;
  bursts.reserve(static_cast<size_t>(spec.total_bursts()));
  int64_t cursor = 0;
  for (size_t g = 0; g < spec.groups().size(); ++g) {
    if (g > 0) cursor += timing.inter_gap_ms;
    for (int b = 0; b < spec.groups()[g]; ++b) {
      if (b > 0) cursor += timing.intra_gap_ms;
      bursts.push_back({cursor, timing.burst_ms});
      cursor += timing.burst_ms;
    }
  }
  return VibrationTimeline::FromBursts(std::move(bursts));
}

int64_t TotalDuration(const VibrationTimeline& timeline) {
  return timeline.bursts().back().end_ms();
}

int64_t ExpectedDuration(const PatternSpec& spec, const TimingParams& timing) {
  const int64_t bursts = spec.total_bursts();
  const int64_t groups = spec.group_count();
  return bursts * timing.burst_ms + (bursts - groups) * timing.intra_gap_ms +
         (groups - 1) * timing.inter_gap_ms;
}

bool TimelinesMatch(const VibrationTimeline& observed,
                    const VibrationTimeline& expected,
                    int64_t jitter_tolerance_ms) {
  if (jitter_tolerance_ms < 0) {
    Throw(ErrorCode::kInvalidArgument, "jitter tolerance must be >= 0");
  }
  if (observed.size() != expected.size()) return false;
  for (size_t i = 0; i < observed.size(); ++i) {
    const Burst& a = observed.bursts()[i];
    const Burst& b = expected.bursts()[i];
    if (std::llabs(a.start_ms - b.start_ms) > jitter_tolerance_ms ||
        std::llabs(a.duration_ms - b.duration_ms) > jitter_tolerance_ms) {
      return false;
    }
  }
  return true;
}

std::vector<PatternSpec> EnumeratePatterns(int max_groups,
                                           int max_bursts_per_group) {
  if (max_groups < 1 || max_bursts_per_group < 1) {
    Throw(ErrorCode::kInvalidArgument, "enumeration bounds must be >= 1");
  }
  if (max_groups > PatternSpec::kMaxGroups ||
      max_bursts_per_group > PatternSpec::kMaxBurstsPerGroup) {
    Throw(ErrorCode::kOutOfRange, "enumeration bounds exceed pattern limits");
  }
  std::vector<PatternSpec> out;
  for (int length = 1; length <= max_groups; ++length) {
    // Odometer over [1, max_bursts_per_group]^length, rightmost digit fastest.
    std::vector<int> digits(static_cast<size_t>(length), 1);
    while (true) {
      out.push_back(PatternSpec::FromGroups(digits));
      int pos = length - 1;
      while (pos >= 0 && digits[static_cast<size_t>(pos)] == max_bursts_per_group) {
        digits[static_cast<size_t>(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++digits[static_cast<size_t>(pos)];
    }
  }
  return out;
}

}  // namespace goodvibes
