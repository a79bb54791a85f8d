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

#include <gtest/gtest.h>

#include <set>

#include "goodvibes/error.h"

namespace goodvibes {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::vector<std::string> Names(const std::vector<PatternSpec>& specs) {
  std::vector<std::string> out;
  for (const PatternSpec& s : specs) out.push_back(s.ToString());
  return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

TEST(PatternSpecTest, ParsesSingleGroup) {
  EXPECT_EQ(PatternSpec::Parse("2").groups(), std::vector<int>{2});
}

TEST(PatternSpecTest, ParsesTwoGroups) {
  EXPECT_EQ(PatternSpec::Parse("1 3").groups(), (std::vector<int>{1, 3}));
}

TEST(PatternSpecTest, CanonicalizesWhitespace) {
  EXPECT_EQ(PatternSpec::Parse("  1\t 3 ").ToString(), "1 3");
}

TEST(PatternSpecTest, RejectsBadInput) {
  EXPECT_EQ(CodeOf([] { PatternSpec::Parse(""); }), ErrorCode::kEmptyPattern);
  EXPECT_EQ(CodeOf([] { PatternSpec::Parse("   "); }), ErrorCode::kEmptyPattern);
  EXPECT_EQ(CodeOf([] { PatternSpec::Parse("0 2"); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] { PatternSpec::Parse("10"); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] { PatternSpec::Parse("1 1 1 1 1"); }),
            ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] { PatternSpec::Parse("-1"); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] { PatternSpec::Parse("x"); }), ErrorCode::kInvalidToken);
  EXPECT_EQ(CodeOf([] { PatternSpec::Parse("1.5"); }), ErrorCode::kInvalidToken);
  EXPECT_EQ(CodeOf([] { PatternSpec::Parse("1,3"); }), ErrorCode::kInvalidToken);
  EXPECT_EQ(CodeOf([] { PatternSpec::Parse("99999999999999999999"); }),
            ErrorCode::kOutOfRange);
}

TEST(PatternSpecTest, FromGroupsChecksBounds) {
  EXPECT_EQ(PatternSpec::FromGroups({1, 3}), PatternSpec::Parse("1 3"));
  EXPECT_EQ(CodeOf([] { PatternSpec::FromGroups({}); }),
            ErrorCode::kEmptyPattern);
  EXPECT_EQ(CodeOf([] { PatternSpec::FromGroups({4, 0}); }),
            ErrorCode::kOutOfRange);
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

TEST(RenderTimelineTest, TwoBurstPatternTakes180Ms) {
  const VibrationTimeline t = RenderTimeline(PatternSpec::Parse("2"));
  EXPECT_EQ(t.bursts(), (std::vector<Burst>{{0, 60}, {120, 60}}));
  EXPECT_EQ(TotalDuration(t), 180);
}

TEST(RenderTimelineTest, OneThreePatternTakes560Ms) {
  const VibrationTimeline t = RenderTimeline(PatternSpec::Parse("1 3"));
  EXPECT_EQ(t.bursts(),
            (std::vector<Burst>{{0, 60}, {260, 60}, {380, 60}, {500, 60}}));
  EXPECT_EQ(TotalDuration(t), 560);
}

TEST(RenderTimelineTest, SingleBurstUsesBurstLength) {
  const TimingParams timing{45, 10, 300};
  const VibrationTimeline t = RenderTimeline(PatternSpec::Parse("1"), timing);
  EXPECT_EQ(t.bursts(), (std::vector<Burst>{Burst{0, 45}}));
  EXPECT_EQ(TotalDuration(t), 45);
}

TEST(RenderTimelineTest, TimingValidation) {
  EXPECT_NO_THROW(TimingParams{}.Validate());
  EXPECT_EQ(CodeOf([] { TimingParams{0, 60, 200}.Validate(); }),
            ErrorCode::kInvalidTiming);
  EXPECT_EQ(CodeOf([] { TimingParams{60, 0, 200}.Validate(); }),
            ErrorCode::kInvalidTiming);
  EXPECT_EQ(CodeOf([] { TimingParams{60, 200, 200}.Validate(); }),
            ErrorCode::kInvalidTiming);
}

TEST(RenderTimelineTest, TimelineTextRoundTrip) {
  const VibrationTimeline t = RenderTimeline(PatternSpec::Parse("1 3"));
  EXPECT_EQ(t.ToString(), "0+60,260+60,380+60,500+60");
  EXPECT_EQ(VibrationTimeline::Parse(t.ToString()), t);
  EXPECT_EQ(CodeOf([] { VibrationTimeline::Parse("0+60,30+60"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { VibrationTimeline::Parse("0-60"); }), ErrorCode::kParse);
}

TEST(RenderTimelineTest, FromBurstsEnforcesInvariants) {
  EXPECT_EQ(CodeOf([] { VibrationTimeline::FromBursts({{5, 60}}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { VibrationTimeline::FromBursts({{0, 0}}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { VibrationTimeline::FromBursts({{0, 60}, {59, 10}}); }),
            ErrorCode::kInvalidArgument);
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

TEST(TimelinesMatchTest, IdenticalAtZeroTolerance) {
  const VibrationTimeline t = RenderTimeline(PatternSpec::Parse("1 3"));
  EXPECT_TRUE(TimelinesMatch(t, t, 0));
}

TEST(TimelinesMatchTest, DifferentBurstCounts) {
  EXPECT_FALSE(TimelinesMatch(RenderTimeline(PatternSpec::Parse("2")),
                              RenderTimeline(PatternSpec::Parse("1 3")), 10));
}

TEST(TimelinesMatchTest, JitterWithinTolerance) {
  const VibrationTimeline t = RenderTimeline(PatternSpec::Parse("2"));
  std::vector<Burst> shifted = t.bursts();
  for (size_t i = 1; i < shifted.size(); ++i) shifted[i].start_ms += 5;
  const VibrationTimeline jittered = VibrationTimeline::FromBursts(shifted);
  EXPECT_TRUE(TimelinesMatch(jittered, t, 10));
  EXPECT_TRUE(TimelinesMatch(jittered, t, 5));
  EXPECT_FALSE(TimelinesMatch(jittered, t, 4));
}

TEST(TimelinesMatchTest, NegativeToleranceRejected) {
  const VibrationTimeline t = RenderTimeline(PatternSpec::Parse("2"));
  EXPECT_EQ(CodeOf([&] { TimelinesMatch(t, t, -1); }),
            ErrorCode::kInvalidArgument);
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

TEST(EnumeratePatternsTest, SmallCases) {
  EXPECT_EQ(Names(EnumeratePatterns(1, 2)), (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(Names(EnumeratePatterns(2, 2)),
            (std::vector<std::string>{"1", "2", "1 1", "1 2", "2 1", "2 2"}));
}

TEST(EnumeratePatternsTest, Counts) {
  EXPECT_EQ(EnumeratePatterns(2, 9).size(), 90u);
  EXPECT_EQ(EnumeratePatterns(2, 3).size(), 12u);
  EXPECT_EQ(EnumeratePatterns(4, 9).size(), 7380u);
}

TEST(EnumeratePatternsTest, RejectsBadBounds) {
  EXPECT_EQ(CodeOf([] { EnumeratePatterns(0, 3); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { EnumeratePatterns(5, 3); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] { EnumeratePatterns(2, 10); }), ErrorCode::kOutOfRange);
}

// ---------------------------------------------------------------------------
// Properties over the full enumeration
// ---------------------------------------------------------------------------

class FullEnumerationTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { all_ = new auto(EnumeratePatterns(4, 9)); }
  static void TearDownTestSuite() {
    delete all_;
    all_ = nullptr;
  }
  static std::vector<PatternSpec>* all_;
};
std::vector<PatternSpec>* FullEnumerationTest::all_ = nullptr;

TEST_F(FullEnumerationTest, RoundTripsThroughText) {
  for (const PatternSpec& spec : *all_) {
    ASSERT_EQ(PatternSpec::Parse(spec.ToString()), spec) << spec.ToString();
  }
}

TEST_F(FullEnumerationTest, NoDuplicatesAndOrdered) {
  std::set<std::vector<int>> seen;
  for (size_t i = 0; i < all_->size(); ++i) {
    ASSERT_TRUE(seen.insert((*all_)[i].groups()).second);
    if (i > 0) {
      const PatternSpec& a = (*all_)[i - 1];
      const PatternSpec& b = (*all_)[i];
      ASSERT_TRUE(a.group_count() < b.group_count() ||
                  (a.group_count() == b.group_count() && a.groups() < b.groups()));
    }
  }
}

TEST_F(FullEnumerationTest, DurationFormulaHolds) {
  for (const TimingParams& timing :
       {TimingParams{}, TimingParams{45, 35, 250}, TimingParams{100, 1, 2}}) {
    for (const PatternSpec& spec : *all_) {
      const int64_t b = spec.total_bursts();
      const int64_t g = spec.group_count();
      const int64_t expected = b * timing.burst_ms + (b - g) * timing.intra_gap_ms +
                               (g - 1) * timing.inter_gap_ms;
      ASSERT_EQ(TotalDuration(RenderTimeline(spec, timing)), expected)
          << spec.ToString();
      ASSERT_EQ(ExpectedDuration(spec, timing), expected);
    }
  }
}

TEST_F(FullEnumerationTest, RenderingIsInjective) {
  std::set<std::string> timelines;
  for (const PatternSpec& spec : *all_) {
    ASSERT_TRUE(timelines.insert(RenderTimeline(spec).ToString()).second)
        << spec.ToString();
  }
}

}  // namespace
}  // namespace goodvibes
