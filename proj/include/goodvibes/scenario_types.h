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

#ifndef GOODVIBES_SCENARIO_TYPES_H_
#define GOODVIBES_SCENARIO_TYPES_H_

#include <array>
#include <optional>
#include <string_view>

#include "goodvibes/pattern.h"

namespace goodvibes {

// The five situational cases: whether the user wakes the phone, crossed with
// what the watch does.
enum class ScenarioId { kS1 = 0, kS2 = 1, kS3 = 2, kS4 = 3, kS5 = 4 };

inline constexpr std::array<ScenarioId, 5> kAllScenarios = {
    ScenarioId::kS1, ScenarioId::kS2, ScenarioId::kS3, ScenarioId::kS4,
    ScenarioId::kS5};

constexpr size_t ScenarioIndex(ScenarioId id) { return static_cast<size_t>(id); }

std::string_view ScenarioName(ScenarioId id);
// Accepts "S1".."S5" (case-insensitive) or "1".."5". Throws kParse.
ScenarioId ParseScenario(std::string_view name);

// Trials per scenario, indexed by ScenarioIndex.
using ScenarioCounts = std::array<int, 5>;

// Per-session exposure counts used in the original study: 24 trials.
inline constexpr ScenarioCounts kStudyCounts = {9, 6, 3, 3, 3};

enum class ParticipantResponse {
  kRecognizedOwnOnWake,
  kReportAbsentOrWrong,
  kReportUnexpectedOwn,
  kNoReport,
};

std::string_view ResponseName(ParticipantResponse response);
// Also accepts "report_absent" and "report_wrong" as aliases.
ParticipantResponse ParseResponse(std::string_view name);

// Correct reaction to each scenario.
ParticipantResponse ExpectedResponse(ScenarioId id);
// The single wrong reaction a lapse produces in each scenario.
ParticipantResponse LapseResponse(ScenarioId id);

// What a participant can observe about a trial: whether they woke the phone
// and what (if anything) the watch did. Deliberately carries no ground truth.
struct StimulusView {
  bool user_woke = false;
  std::optional<VibrationTimeline> timeline;

  friend bool operator==(const StimulusView&, const StimulusView&) = default;
};

}  // namespace goodvibes

#endif  // GOODVIBES_SCENARIO_TYPES_H_
