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

#ifndef GOODVIBES_METRICS_H_
#define GOODVIBES_METRICS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "goodvibes/pattern.h"
#include "goodvibes/perceiver.h"
#include "goodvibes/scenario.h"

namespace goodvibes {

inline constexpr int kLogSchemaVersion = 1;

struct SessionHeader {
  int schema_version = kLogSchemaVersion;
  // "simulated" or "live".
  std::string mode = "simulated";
  std::string participant_id;
  int participant_index = 0;
  uint64_t seed = 0;
  uint64_t schedule_seed = 0;
  PerceiverProfile profile;
  std::optional<PatternSpec> enrolled_pattern;
  bool chosen_by_user = false;
  // Group label used for report breakdowns.
  std::optional<ExperienceLevel> experience;
  TimingParams timing;

  friend bool operator==(const SessionHeader&, const SessionHeader&) = default;
};

// Line formats; see docs/session_log_format.md.
nlohmann::json HeaderToJson(const SessionHeader& header);
SessionHeader HeaderFromJson(const nlohmann::json& j);
nlohmann::json TrialToJson(const TrialRecord& record);
TrialRecord TrialFromJson(const nlohmann::json& j);

// Append-only, in-memory session log: one header, trial records in index
// order, and free-form annotation lines (live-session commands and events)
// interleaved at the position they were appended.
class SessionLog {
 public:
  struct Annotation {
    size_t after_records;
    nlohmann::json line;

    friend bool operator==(const Annotation&, const Annotation&) = default;
  };

  const std::optional<SessionHeader>& header() const { return header_; }
  const std::vector<TrialRecord>& records() const { return records_; }
  const std::vector<Annotation>& annotations() const { return annotations_; }

  // Throws kInvalidArgument if a header is already present.
  void SetHeader(SessionHeader header);
  // Throws kHeaderMissing, or kIndexGap unless record.index is the next one.
  void AppendRecord(const TrialRecord& record);
  // `line` must be an object with a "type" other than header/trial.
  void AppendAnnotation(nlohmann::json line);

  // One JSON object per line, '\n'-terminated.
  std::string Serialize() const;
  // Throws kParse on malformed input.
  static SessionLog Parse(std::string_view text);

  friend bool operator==(const SessionLog&, const SessionLog&) = default;

 private:
  std::optional<SessionHeader> header_;
  std::vector<TrialRecord> records_;
  std::vector<Annotation> annotations_;
};

SessionLog ReadSessionLog(const std::filesystem::path& path);
void WriteSessionLog(const std::filesystem::path& path, const SessionLog& log);

// Writes each line as soon as it is accepted, flushing after every line.
class SessionLogWriter {
 public:
  // Truncates `path` unless `resume_from` is given, in which case the file
  // is expected to already contain exactly that log.
  explicit SessionLogWriter(const std::filesystem::path& path,
                            std::optional<SessionLog> resume_from = {});

  void WriteHeader(const SessionHeader& header);
  void AppendRecord(const TrialRecord& record);
  void AppendAnnotation(const nlohmann::json& line);

  const SessionLog& log() const { return log_; }

 private:
  void WriteLine(const nlohmann::json& line);

  SessionLog log_;
  std::ofstream out_;
};

inline constexpr double kWilsonZ95 = 1.959963984540054;

// Half-width of the Wilson score interval for proportion p over n trials.
double WilsonHalfWidth(double p, int n, double z = kWilsonZ95);

struct RateCell {
  int correct = 0;
  int total = 0;

  double rate() const {
    return total > 0 ? static_cast<double>(correct) / total : 0.0;
  }
  double half_width() const { return WilsonHalfWidth(rate(), total); }

  friend bool operator==(const RateCell&, const RateCell&) = default;
};

struct AggregateReport {
  int sessions = 0;
  std::array<RateCell, 5> scenarios;
  RateCell overall;
  // Indexed by ExperienceLevel; sessions without a label are left out.
  std::array<RateCell, 3> experience;
  RateCell chosen;
  RateCell assigned;

  friend bool operator==(const AggregateReport&,
                         const AggregateReport&) = default;
};

// Throws kEmptyInput for an empty list and kHeaderMissing for a headerless
// log.
AggregateReport Aggregate(std::span<const SessionLog> logs);

struct ReferenceTargets {
  std::array<double, 5> scenarios = kStudyRecognitionRates;
  // Indexed by ExperienceLevel.
  std::array<double, 3> experience = {0.89, 0.99, 0.97};
  double chosen = 0.98;
  double assigned = 0.95;
  double z = kWilsonZ95;

  // Questionnaire means (ease, speed, adaptability, intent to use). Kept for
  // the report footer only; nothing in the simulator produces them.
  static constexpr std::array<double, 4> kQuestionnaireMeans = {4.9, 5.0, 4.9,
                                                                3.4};
};

enum class ComparisonScope { kScenarios, kAll };

struct ComparisonRow {
  std::string name;
  double target = 0.0;
  double rate = 0.0;
  int n = 0;
  double tolerance = 0.0;
  double delta = 0.0;
  // n == 0: nothing to compare against.
  bool excluded = false;
  bool pass = false;
};

struct Comparison {
  std::vector<ComparisonRow> rows;

  // True iff every non-excluded row passed.
  bool all_passed() const;
};

// A row passes iff |rate - target| <= Wilson half-width at (target, n).
Comparison CompareToReference(const AggregateReport& report,
                              const ReferenceTargets& targets = {},
                              ComparisonScope scope = ComparisonScope::kScenarios);

nlohmann::json ReportToJson(const AggregateReport& report,
                            const Comparison& comparison);
// Plain-text tables laid out like the study's results section.
std::string FormatReportTable(const AggregateReport& report,
                              const Comparison& comparison);

}  // namespace goodvibes

#endif  // GOODVIBES_METRICS_H_
