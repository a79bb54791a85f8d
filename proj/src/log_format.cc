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

#include "goodvibes/error.h"
#include "goodvibes/metrics.h"

namespace goodvibes {
namespace {

using nlohmann::json;

template <typename T, typename F>
json OptionalToJson(const std::optional<T>& value, F&& convert) {
  return value ? json(convert(*value)) : json(nullptr);
}

const json& Field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    Throw(ErrorCode::kParse, std::string("missing field '") + key + "'");
  }
  return *it;
}

template <typename T>
T Get(const json& j, const char* key) {
  try {
    return Field(j, key).get<T>();
  } catch (const json::exception& e) {
    Throw(ErrorCode::kParse, std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
std::optional<T> GetOptional(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (v.is_null()) return std::nullopt;
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    Throw(ErrorCode::kParse, std::string("field '") + key + "': " + e.what());
  }
}

json ProfileToJson(const PerceiverProfile& profile) {
  json j;
  j["correct_probability"] = profile.correct_probability;
  j["experience"] = OptionalToJson(profile.experience, [](ExperienceLevel l) {
    return std::string(ExperienceLevelName(l));
  });
  j["chosen"] = OptionalToJson(profile.pattern_chosen_by_user,
                               [](bool b) { return b; });
  return j;
}

PerceiverProfile ProfileFromJson(const json& j) {
  PerceiverProfile profile;
  profile.correct_probability =
      Get<std::array<double, 5>>(j, "correct_probability");
  if (auto e = GetOptional<std::string>(j, "experience")) {
    profile.experience = ParseExperienceLevel(*e);
  }
  profile.pattern_chosen_by_user = GetOptional<bool>(j, "chosen");
  profile.Validate();
  return profile;
}

}  // namespace

json HeaderToJson(const SessionHeader& header) {
  json j;
  j["type"] = "header";
  j["schema_version"] = header.schema_version;
  j["mode"] = header.mode;
  j["participant_id"] = header.participant_id;
  j["participant_index"] = header.participant_index;
  j["seed"] = header.seed;
  j["schedule_seed"] = header.schedule_seed;
  j["profile"] = ProfileToJson(header.profile);
  j["enrolled_pattern"] = OptionalToJson(
      header.enrolled_pattern, [](const PatternSpec& p) { return p.ToString(); });
  j["chosen_by_user"] = header.chosen_by_user;
  j["experience"] = OptionalToJson(header.experience, [](ExperienceLevel l) {
    return std::string(ExperienceLevelName(l));
  });
  j["timing"] = {{"burst_ms", header.timing.burst_ms},
                 {"intra_gap_ms", header.timing.intra_gap_ms},
                 {"inter_gap_ms", header.timing.inter_gap_ms}};
  return j;
}

SessionHeader HeaderFromJson(const json& j) {
  if (Get<std::string>(j, "type") != "header") {
    Throw(ErrorCode::kParse, "not a header line");
  }
  SessionHeader header;
  header.schema_version = Get<int>(j, "schema_version");
  if (header.schema_version != kLogSchemaVersion) {
    Throw(ErrorCode::kParse, "unsupported log schema version " +
                                 std::to_string(header.schema_version));
  }
  header.mode = Get<std::string>(j, "mode");
  header.participant_id = Get<std::string>(j, "participant_id");
  header.participant_index = Get<int>(j, "participant_index");
  header.seed = Get<uint64_t>(j, "seed");
  header.schedule_seed = Get<uint64_t>(j, "schedule_seed");
  header.profile = ProfileFromJson(Field(j, "profile"));
  if (auto p = GetOptional<std::string>(j, "enrolled_pattern")) {
    header.enrolled_pattern = PatternSpec::Parse(*p);
  }
  header.chosen_by_user = Get<bool>(j, "chosen_by_user");
  if (auto e = GetOptional<std::string>(j, "experience")) {
    header.experience = ParseExperienceLevel(*e);
  }
  const json& timing = Field(j, "timing");
  header.timing.burst_ms = Get<int64_t>(timing, "burst_ms");
  header.timing.intra_gap_ms = Get<int64_t>(timing, "intra_gap_ms");
  header.timing.inter_gap_ms = Get<int64_t>(timing, "inter_gap_ms");
  header.timing.Validate();
  return header;
}

json TrialToJson(const TrialRecord& r) {
  json j;
  j["type"] = "trial";
  j["index"] = r.index;
  j["scenario"] = ScenarioName(r.scenario);
  j["user_woke"] = r.user_woke;
  j["stimulus"] = OptionalToJson(
      r.stimulus, [](const VibrationTimeline& t) { return t.ToString(); });
  j["stimulus_source"] =
      OptionalToJson(r.stimulus_source, [](VibrationSource s) {
        return std::string(VibrationSourceName(s));
      });
  j["stimulus_pattern"] =
      OptionalToJson(r.stimulus_pattern, [](const std::string& s) { return s; });
  j["absence_cause"] = AbsenceCauseName(r.absence_cause);
  j["suppressed_vibrations"] = r.suppressed_vibrations;
  j["expected_response"] = ResponseName(r.expected_response);
  j["response"] = OptionalToJson(r.response, [](ParticipantResponse v) {
    return std::string(ResponseName(v));
  });
  j["correct"] = r.correct();
  j["started_at_ms"] = r.started_at_ms;
  j["stimulus_at_ms"] =
      OptionalToJson(r.stimulus_at_ms, [](int64_t t) { return t; });
  j["responded_at_ms"] =
      OptionalToJson(r.responded_at_ms, [](int64_t t) { return t; });
  return j;
}

TrialRecord TrialFromJson(const json& j) {
  if (Get<std::string>(j, "type") != "trial") {
    Throw(ErrorCode::kParse, "not a trial line");
  }
  TrialRecord r;
  r.index = Get<int>(j, "index");
  r.scenario = ParseScenario(Get<std::string>(j, "scenario"));
  r.user_woke = Get<bool>(j, "user_woke");
  if (auto s = GetOptional<std::string>(j, "stimulus")) {
    r.stimulus = VibrationTimeline::Parse(*s);
  }
  if (auto s = GetOptional<std::string>(j, "stimulus_source")) {
    r.stimulus_source = ParseVibrationSource(*s);
  }
  r.stimulus_pattern = GetOptional<std::string>(j, "stimulus_pattern");
  r.absence_cause = ParseAbsenceCause(Get<std::string>(j, "absence_cause"));
  r.suppressed_vibrations = Get<int>(j, "suppressed_vibrations");
  r.expected_response = ParseResponse(Get<std::string>(j, "expected_response"));
  if (r.expected_response != ExpectedResponse(r.scenario)) {
    Throw(ErrorCode::kParse, "expected_response inconsistent with scenario");
  }
  if (auto s = GetOptional<std::string>(j, "response")) {
    r.response = ParseResponse(*s);
  }
  r.started_at_ms = Get<int64_t>(j, "started_at_ms");
  r.stimulus_at_ms = GetOptional<int64_t>(j, "stimulus_at_ms");
  r.responded_at_ms = GetOptional<int64_t>(j, "responded_at_ms");
  return r;
}

}  // namespace goodvibes
