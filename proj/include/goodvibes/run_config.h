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

#ifndef GOODVIBES_RUN_CONFIG_H_
#define GOODVIBES_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "goodvibes/pattern.h"
#include "goodvibes/perceiver.h"
#include "goodvibes/scenario.h"
#include "goodvibes/secure_link.h"

namespace goodvibes {

// How each participant's authentication pattern is obtained. kMixed lets
// even-indexed participants choose and assigns the rest, as in the study.
enum class PatternPolicy { kMixed, kChosen, kAssigned, kExplicit };

// kStudy gives every participant the base profile; kByGroup calibrates each
// participant's profile to their experience group and selection condition.
enum class ProfileMode { kStudy, kByGroup };

// kPerParticipant derives each schedule seed from the run seed and the
// participant index; kGlobal gives everyone the run seed (one shared order).
enum class SeedPolicy { kPerParticipant, kGlobal };

inline constexpr uint64_t kDefaultSeed = 20240501;

struct RunConfig {
  uint64_t seed = kDefaultSeed;
  int participants = 30;
  ScenarioCounts counts = kStudyCounts;
  TimingParams timing;
  PerceiverProfile base_profile;
  // "default" or the path the base profile was loaded from.
  std::string profile_source = "default";
  PatternPolicy pattern_policy = PatternPolicy::kMixed;
  std::optional<PatternSpec> explicit_pattern;
  std::vector<PatternSpec> pattern_pool = {PatternSpec::Parse("2"),
                                           PatternSpec::Parse("1 3")};
  std::vector<PatternSpec> distractor_pool = EnumeratePatterns(2, 3);
  LinkModel link{20, 80, 0.0, 0.0};
  int64_t debounce_ms = 2000;
  ProfileMode profile_mode = ProfileMode::kStudy;
  SeedPolicy seed_policy = SeedPolicy::kPerParticipant;
  AbsenceMode absence_mode = AbsenceMode::kAlternate;
  // Participant driven by a live session.
  int live_participant = 0;
  std::filesystem::path output_dir = "goodvibes_out";

  // Throws kInvalidConfig describing the first problem found.
  void Validate() const;

  // Sets one option from its textual form; see docs/cli.md for keys.
  // Throws kInvalidConfig for unknown keys or unparsable values.
  void Set(std::string_view key, std::string_view value);

  nlohmann::json ToJson() const;
};

// "9,6,3,3,3" or "S1:1,S3:2" (unnamed scenarios get 0).
ScenarioCounts ParseCounts(std::string_view text);
std::string FormatCounts(const ScenarioCounts& counts);

std::string_view PatternPolicyName(PatternPolicy policy);
std::string_view ProfileModeName(ProfileMode mode);
std::string_view SeedPolicyName(SeedPolicy policy);

}  // namespace goodvibes

#endif  // GOODVIBES_RUN_CONFIG_H_
