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

#include "goodvibes/metrics.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "goodvibes/error.h"

namespace goodvibes {

using nlohmann::json;

void SessionLog::SetHeader(SessionHeader header) {
  if (header_) Throw(ErrorCode::kInvalidArgument, "log already has a header");
  header_ = std::move(header);
}

void SessionLog::AppendRecord(const TrialRecord& record) {
  if (!header_) Throw(ErrorCode::kHeaderMissing, "header must come first");
  const int expected = static_cast<int>(records_.size()) + 1;
  if (record.index != expected) {
    Throw(ErrorCode::kIndexGap, "expected trial index " +
                                    std::to_string(expected) + ", got " +
                                    std::to_string(record.index));
  }
  records_.push_back(record);
}

void SessionLog::AppendAnnotation(json line) {
  if (!header_) Throw(ErrorCode::kHeaderMissing, "header must come first");
  if (!line.is_object() || !line.contains("type") ||
      !line["type"].is_string() || line["type"] == "header" ||
      line["type"] == "trial") {
    Throw(ErrorCode::kInvalidArgument,
          "annotation needs a type other than header/trial");
  }
  annotations_.push_back({records_.size(), std::move(line)});
}

std::string SessionLog::Serialize() const {
  std::string out;
  if (!header_) return out;
  out += HeaderToJson(*header_).dump();
  out += '\n';
  size_t next_annotation = 0;
  auto flush_annotations = [&](size_t records_written) {
    while (next_annotation < annotations_.size() &&
           annotations_[next_annotation].after_records == records_written) {
      out += annotations_[next_annotation].line.dump();
      out += '\n';
      ++next_annotation;
    }
  };
  flush_annotations(0);
  for (size_t i = 0; i < records_.size(); ++i) {
    out += TrialToJson(records_[i]).dump();
    out += '\n';
    flush_annotations(i + 1);
  }
  return out;
}

SessionLog SessionLog::Parse(std::string_view text) {
  SessionLog log;
  size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      Throw(ErrorCode::kParse,
            "log line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
      Throw(ErrorCode::kParse,
            "log line " + std::to_string(line_no) + ": missing type");
    }
    const std::string type = j["type"];
    try {
      if (type == "header") {
        if (log.header_) {
          Throw(ErrorCode::kParse, "duplicate header");
        }
        log.header_ = HeaderFromJson(j);
      } else if (type == "trial") {
        log.AppendRecord(TrialFromJson(j));
      } else {
        log.AppendAnnotation(std::move(j));
      }
    } catch (const Error& e) {
      throw Error(e.code(),
                  "log line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return log;
}

SessionLog ReadSessionLog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Throw(ErrorCode::kIo, "cannot open log '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return SessionLog::Parse(buffer.str());
}

void WriteSessionLog(const std::filesystem::path& path, const SessionLog& log) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Throw(ErrorCode::kIo, "cannot write log '" + path.string() + "'");
  out << log.Serialize();
  if (!out.flush()) Throw(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

SessionLogWriter::SessionLogWriter(const std::filesystem::path& path,
                                   std::optional<SessionLog> resume_from) {
  if (resume_from) {
    log_ = std::move(*resume_from);
    out_.open(path, std::ios::binary | std::ios::app);
  } else {
    out_.open(path, std::ios::binary | std::ios::trunc);
  }
  if (!out_) Throw(ErrorCode::kIo, "cannot open log '" + path.string() + "'");
}

void SessionLogWriter::WriteLine(const json& line) {
  out_ << line.dump() << '\n';
  out_.flush();
  if (!out_) Throw(ErrorCode::kIo, "log write failed");
}

void SessionLogWriter::WriteHeader(const SessionHeader& header) {
  log_.SetHeader(header);
  WriteLine(HeaderToJson(header));
}

void SessionLogWriter::AppendRecord(const TrialRecord& record) {
  log_.AppendRecord(record);
  WriteLine(TrialToJson(record));
}

void SessionLogWriter::AppendAnnotation(const json& line) {
  log_.AppendAnnotation(line);
  WriteLine(line);
}

double WilsonHalfWidth(double p, int n, double z) {
  if (n <= 0) return 0.0;
  const double nd = static_cast<double>(n);
  const double z2 = z * z;
  return z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) /
         (1.0 + z2 / nd);
}

AggregateReport Aggregate(std::span<const SessionLog> logs) {
  if (logs.empty()) Throw(ErrorCode::kEmptyInput, "no session logs given");
  AggregateReport report;
  for (const SessionLog& log : logs) {
    if (!log.header()) Throw(ErrorCode::kHeaderMissing, "log has no header");
    const SessionHeader& header = *log.header();
    ++report.sessions;
    for (const TrialRecord& record : log.records()) {
      const int hit = record.correct() ? 1 : 0;
      auto add = [hit](RateCell& cell) {
        cell.correct += hit;
        cell.total += 1;
      };
      add(report.scenarios[ScenarioIndex(record.scenario)]);
      add(report.overall);
      if (header.experience) {
        add(report.experience[static_cast<size_t>(*header.experience)]);
      }
      add(header.chosen_by_user ? report.chosen : report.assigned);
    }
  }
  return report;
}

bool Comparison::all_passed() const {
  for (const ComparisonRow& row : rows) {
    if (!row.excluded && !row.pass) return false;
  }
  return true;
}

Comparison CompareToReference(const AggregateReport& report,
                              const ReferenceTargets& targets,
                              ComparisonScope scope) {
  Comparison comparison;
  auto compare = [&](std::string name, const RateCell& cell, double target) {
    ComparisonRow row;
    row.name = std::move(name);
    row.target = target;
    row.n = cell.total;
    if (cell.total == 0) {
      row.excluded = true;
    } else {
      row.rate = cell.rate();
      row.delta = row.rate - target;
      row.tolerance = WilsonHalfWidth(target, cell.total, targets.z);
      row.pass = std::fabs(row.delta) <= row.tolerance;
    }
    comparison.rows.push_back(std::move(row));
  };
  for (ScenarioId id : kAllScenarios) {
    compare(std::string(ScenarioName(id)),
            report.scenarios[ScenarioIndex(id)],
            targets.scenarios[ScenarioIndex(id)]);
  }
  if (scope == ComparisonScope::kAll) {
    for (ExperienceLevel level :
         {ExperienceLevel::kDaily, ExperienceLevel::kSometimes,
          ExperienceLevel::kNone}) {
      const auto i = static_cast<size_t>(level);
      compare("experience_" + std::string(ExperienceLevelName(level)),
              report.experience[i], targets.experience[i]);
    }
    compare("chosen", report.chosen, targets.chosen);
    compare("assigned", report.assigned, targets.assigned);
  }
  return comparison;
}

namespace {

json CellToJson(const RateCell& cell) {
  return {{"correct", cell.correct},
          {"total", cell.total},
          {"rate", cell.rate()},
          {"half_width", cell.half_width()}};
}

std::string Format(const char* fmt, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), fmt, args...);
  return buffer;
}

constexpr const char* kSituation[] = {
    "wake, own pattern",
    "no wake, other pattern",
    "no wake, own pattern",
    "wake, no vibration",
    "wake, other pattern",
};

}  // namespace

json ReportToJson(const AggregateReport& report, const Comparison& comparison) {
  json j;
  j["sessions"] = report.sessions;
  json scenarios = json::object();
  for (ScenarioId id : kAllScenarios) {
    scenarios[std::string(ScenarioName(id))] =
        CellToJson(report.scenarios[ScenarioIndex(id)]);
  }
  j["scenarios"] = scenarios;
  j["overall"] = CellToJson(report.overall);
  json experience = json::object();
  for (ExperienceLevel level : {ExperienceLevel::kNone,
                                ExperienceLevel::kSometimes,
                                ExperienceLevel::kDaily}) {
    experience[std::string(ExperienceLevelName(level))] =
        CellToJson(report.experience[static_cast<size_t>(level)]);
  }
  j["experience"] = experience;
  j["chosen"] = CellToJson(report.chosen);
  j["assigned"] = CellToJson(report.assigned);
  json rows = json::array();
  for (const ComparisonRow& row : comparison.rows) {
    rows.push_back({{"name", row.name},
                    {"target", row.target},
                    {"rate", row.rate},
                    {"n", row.n},
                    {"tolerance", row.tolerance},
                    {"delta", row.delta},
                    {"excluded", row.excluded},
                    {"pass", row.pass}});
  }
  j["comparison"] = rows;
  j["all_passed"] = comparison.all_passed();
  return j;
}

std::string FormatReportTable(const AggregateReport& report,
                              const Comparison& comparison) {
  std::string out;
  out += Format("Sessions: %d, trials: %d\n\n", report.sessions,
                report.overall.total);
  out += "Scenario  Situation                 Correct/Total    Rate  Target  "
         "  Tol   Delta  Result\n";
  for (ScenarioId id : kAllScenarios) {
    const size_t i = ScenarioIndex(id);
    const RateCell& cell = report.scenarios[i];
    const ComparisonRow* row = nullptr;
    for (const ComparisonRow& r : comparison.rows) {
      if (r.name == ScenarioName(id)) row = &r;
    }
    out += Format("%-8s  %-24s %7d/%-7d", std::string(ScenarioName(id)).c_str(),
                  kSituation[i], cell.correct, cell.total);
    if (row == nullptr) {
      out += Format(" %6.1f%%\n", 100.0 * cell.rate());
    } else if (row->excluded) {
      out += Format(" %7s %6.1f%% %6s %7s  excluded (n=0)\n", "-",
                    100.0 * row->target, "-", "-");
    } else {
      out += Format(" %6.1f%% %6.1f%% %5.1f%% %+6.1f%%  %s\n",
                    100.0 * cell.rate(), 100.0 * row->target,
                    100.0 * row->tolerance, 100.0 * row->delta,
                    row->pass ? "pass" : "FAIL");
    }
  }
  out += Format("\nOverall: %d/%d correct (%.1f%%)\n", report.overall.correct,
                report.overall.total, 100.0 * report.overall.rate());

  out += "\nBy smartwatch experience (overall correct)\n";
  for (ExperienceLevel level : {ExperienceLevel::kDaily,
                                ExperienceLevel::kSometimes,
                                ExperienceLevel::kNone}) {
    const RateCell& cell = report.experience[static_cast<size_t>(level)];
    out += Format("  %-10s %7d/%-7d %6.1f%%\n",
                  std::string(ExperienceLevelName(level)).c_str(),
                  cell.correct, cell.total, 100.0 * cell.rate());
  }
  out += "\nBy pattern selection (overall error)\n";
  out += Format("  %-10s %7d/%-7d %6.1f%%\n", "chosen", report.chosen.correct,
                report.chosen.total,
                report.chosen.total ? 100.0 * (1.0 - report.chosen.rate()) : 0.0);
  out += Format("  %-10s %7d/%-7d %6.1f%%\n", "assigned",
                report.assigned.correct, report.assigned.total,
                report.assigned.total ? 100.0 * (1.0 - report.assigned.rate())
                                      : 0.0);

  bool has_group_rows = false;
  for (const ComparisonRow& row : comparison.rows) {
    if (row.name.rfind('S', 0) == 0 && row.name.size() == 2) continue;
    if (!has_group_rows) {
      out += "\nGroup targets\n";
      has_group_rows = true;
    }
    if (row.excluded) {
      out += Format("  %-22s excluded (n=0)\n", row.name.c_str());
    } else {
      out += Format("  %-22s rate %6.1f%% target %6.1f%% tol %5.1f%%  %s\n",
                    row.name.c_str(), 100.0 * row.rate, 100.0 * row.target,
                    100.0 * row.tolerance, row.pass ? "pass" : "FAIL");
    }
  }

  const auto& q = ReferenceTargets::kQuestionnaireMeans;
  out += Format(
      "\nQuestionnaire means (reference only, not simulated): ease %.1f, "
      "speed %.1f, adaptation %.1f, would use %.1f\n",
      q[0], q[1], q[2], q[3]);
  out += Format("\nComparison: %s\n",
                comparison.all_passed() ? "all targets within tolerance"
                                        : "some targets outside tolerance");
  return out;
}

}  // namespace goodvibes
