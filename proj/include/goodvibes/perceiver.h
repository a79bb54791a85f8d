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

#ifndef GOODVIBES_PERCEIVER_H_
#define GOODVIBES_PERCEIVER_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "goodvibes/pattern.h"
#include "goodvibes/rng.h"
#include "goodvibes/scenario_types.h"

namespace goodvibes {

enum class ExperienceLevel { kNone, kSometimes, kDaily };

std::string_view ExperienceLevelName(ExperienceLevel level);
ExperienceLevel ParseExperienceLevel(std::string_view name);

// Recognition rates reported for the study population, S1..S5.
inline constexpr std::array<double, 5> kStudyRecognitionRates = {
    0.99, 0.97, 0.98, 0.91, 0.94};

// Overall correct rates reported per subgroup.
double ExperienceTarget(ExperienceLevel level);
double ChoiceTarget(bool chosen_by_user);

struct PerceiverProfile {
  std::array<double, 5> correct_probability = kStudyRecognitionRates;
  std::optional<ExperienceLevel> experience;
  std::optional<bool> pattern_chosen_by_user;

  double probability(ScenarioId id) const {
    return correct_probability[ScenarioIndex(id)];
  }

  // Throws kInvalidArgument if any probability is outside [0, 1].
  void Validate() const;

  friend bool operator==(const PerceiverProfile&,
                         const PerceiverProfile&) = default;
};

// Overall correct rate when trials are drawn in proportion to `mix`.
double MixWeightedRate(const PerceiverProfile& profile,
                       const ScenarioCounts& mix = kStudyCounts);

// Which scenario the participant is experiencing, judged only from what they
// can feel. Empty when nothing happened (no wake, no vibration).
std::optional<ScenarioId> ClassifySituation(
    const StimulusView& view, const VibrationTimeline& enrolled_timeline);

// With probability p(scenario) returns the scenario's correct response,
// otherwise its lapse response. Consumes exactly one draw when a scenario is
// recognised, none otherwise.
ParticipantResponse Perceive(const StimulusView& view,
                             const VibrationTimeline& enrolled_timeline,
                             const PerceiverProfile& profile, Rng& rng);

// Multiplies every scenario's odds p/(1-p) by one common factor, chosen so
// that MixWeightedRate(result, mix) == target. Throws kUnreachableTarget when
// the target is outside what the clipped probabilities can reach.
PerceiverProfile RescaleToTarget(const PerceiverProfile& base, double target,
                                 const ScenarioCounts& mix = kStudyCounts);

// Group-calibrated profile. With one of the two factors given, the target is
// that group's reported rate. With both, the two log-odds shifts relative to
// the base rate are added. With neither, returns `base`.
PerceiverProfile ProfileFor(std::optional<ExperienceLevel> experience,
                            std::optional<bool> chosen_by_user,
                            const PerceiverProfile& base = {});

// Key-value text: "p_s1 = 0.99" ... "p_s5", "experience", "chosen".
// Blank lines and '#' comments are ignored. Throws kParse.
PerceiverProfile ParseProfile(std::string_view text);
std::string FormatProfile(const PerceiverProfile& profile);
PerceiverProfile LoadProfileFile(const std::string& path);

}  // namespace goodvibes

#endif  // GOODVIBES_PERCEIVER_H_
