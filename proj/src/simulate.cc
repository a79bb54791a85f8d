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

#include "goodvibes/simulate.h"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "goodvibes/error.h"

namespace goodvibes {
namespace {

// Study group sizes: 9 daily, 8 sometimes, 13 without smartwatch experience.
constexpr std::array<std::pair<ExperienceLevel, int>, 3> kExperienceGroups = {{
    {ExperienceLevel::kDaily, 9},
    {ExperienceLevel::kSometimes, 8},
    {ExperienceLevel::kNone, 13},
}};

// Largest-remainder apportionment of `n` labels over the study proportions,
// shuffled under `rng`.
std::vector<ExperienceLevel> ExperienceLabels(int n, Rng rng) {
  const int study_total = 30;
  std::array<int, 3> seats{};
  std::array<std::pair<int, size_t>, 3> remainders{};
  int assigned = 0;
  for (size_t i = 0; i < kExperienceGroups.size(); ++i) {
    const int share = n * kExperienceGroups[i].second;
    seats[i] = share / study_total;
    remainders[i] = {share % study_total, i};
    assigned += seats[i];
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t k = 0; assigned < n; ++k, ++assigned) {
    ++seats[remainders[k % remainders.size()].second];
  }
  std::vector<ExperienceLevel> labels;
  for (size_t i = 0; i < kExperienceGroups.size(); ++i) {
    labels.insert(labels.end(), static_cast<size_t>(seats[i]),
                  kExperienceGroups[i].first);
  }
  for (size_t i = labels.size(); i > 1; --i) {
    const auto j = static_cast<size_t>(rng.UniformInt(0, static_cast<int64_t>(i) - 1));
    std::swap(labels[i - 1], labels[j]);
  }
  return labels;
}

std::string ParticipantId(int index) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "P%03d", index + 1);
  return buffer;
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Throw(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << content;
  if (!out.flush()) Throw(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

}  // namespace

uint64_t ParticipantSeed(const RunConfig& config, int index) {
  return Rng(config.seed).Fork(1000 + static_cast<uint64_t>(index)).seed();
}

std::vector<ParticipantPlan> PlanParticipants(const RunConfig& config) {
  config.Validate();
  const std::vector<ExperienceLevel> labels =
      ExperienceLabels(config.participants, Rng(config.seed).Fork(7));
  std::vector<ParticipantPlan> plans;
  plans.reserve(static_cast<size_t>(config.participants));
  for (int i = 0; i < config.participants; ++i) {
    ParticipantPlan plan;
    plan.index = i;
    plan.id = ParticipantId(i);
    plan.experience = labels[static_cast<size_t>(i)];
    Rng choice_rng = Rng(ParticipantSeed(config, i)).Fork(3);
    switch (config.pattern_policy) {
      case PatternPolicy::kExplicit:
        plan.pattern = *config.explicit_pattern;
        plan.chosen_by_user = true;
        break;
      case PatternPolicy::kChosen:
      case PatternPolicy::kAssigned:
      case PatternPolicy::kMixed: {
        // No preference model: a choosing participant also lands uniformly
        // on a pool entry. Only the recorded condition differs.
        const auto pick = choice_rng.UniformInt(
            0, static_cast<int64_t>(config.pattern_pool.size()) - 1);
        plan.pattern = config.pattern_pool[static_cast<size_t>(pick)];
        plan.chosen_by_user =
            config.pattern_policy == PatternPolicy::kChosen ||
            (config.pattern_policy == PatternPolicy::kMixed && i % 2 == 0);
        break;
      }
    }
    if (config.profile_mode == ProfileMode::kByGroup) {
      plan.profile =
          ProfileFor(plan.experience, plan.chosen_by_user, config.base_profile);
    } else {
      plan.profile = config.base_profile;
    }
    plan.schedule_seed = config.seed_policy == SeedPolicy::kGlobal
                             ? config.seed
                             : MixSeed(config.seed + static_cast<uint64_t>(i) + 1);
    plans.push_back(std::move(plan));
  }
  return plans;
}

World MakeParticipantWorld(const RunConfig& config,
                           const ParticipantPlan& plan) {
  WorldOptions options;
  options.timing = config.timing;
  options.link = config.link;
  options.debounce_ms = config.debounce_ms;
  options.distractor_pool = config.distractor_pool;
  Rng world_rng = Rng(ParticipantSeed(config, plan.index)).Fork(1);
  return MakeWorld(options, plan.pattern, plan.chosen_by_user, world_rng);
}

SessionHeader MakeHeader(const RunConfig& config, const ParticipantPlan& plan,
                         std::string mode) {
  SessionHeader header;
  header.mode = std::move(mode);
  header.participant_id = plan.id;
  header.participant_index = plan.index;
  header.seed = config.seed;
  header.schedule_seed = plan.schedule_seed;
  header.profile = plan.profile;
  header.enrolled_pattern = plan.pattern;
  header.chosen_by_user = plan.chosen_by_user;
  header.experience = plan.experience;
  header.timing = config.timing;
  return header;
}

SessionLog SimulateParticipant(const RunConfig& config,
                               const ParticipantPlan& plan) {
  World world = MakeParticipantWorld(config, plan);
  SessionSchedule schedule =
      BuildSchedule(plan.schedule_seed, config.counts, plan.index);
  SessionOptions options;
  options.absence_mode = config.absence_mode;
  Rng session_rng = Rng(ParticipantSeed(config, plan.index)).Fork(2);
  std::vector<TrialRecord> records =
      RunSession(schedule, world, plan.profile, session_rng, options);

  SessionLog log;
  log.SetHeader(MakeHeader(config, plan, "simulated"));
  for (const TrialRecord& record : records) log.AppendRecord(record);
  return log;
}

size_t SimulationResult::record_count() const {
  size_t n = 0;
  for (const SessionLog& log : logs) n += log.records().size();
  return n;
}

SimulationResult RunSimulation(const RunConfig& config) {
  SimulationResult result;
  result.config = config;
  for (const ParticipantPlan& plan : PlanParticipants(config)) {
    result.logs.push_back(SimulateParticipant(config, plan));
  }
  result.report = Aggregate(result.logs);
  result.comparison = CompareToReference(
      result.report, ReferenceTargets(),
      config.profile_mode == ProfileMode::kByGroup ? ComparisonScope::kAll
                                                   : ComparisonScope::kScenarios);
  return result;
}

void WriteSimulationOutputs(const SimulationResult& result,
                            const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "sessions", ec);
  if (ec) {
    Throw(ErrorCode::kIo, "cannot create '" + dir.string() + "': " + ec.message());
  }
  WriteFile(dir / "config.json", result.config.ToJson().dump(2) + "\n");
  for (const SessionLog& log : result.logs) {
    WriteSessionLog(dir / "sessions" / (log.header()->participant_id + ".jsonl"),
                    log);
  }
  WriteFile(dir / "report.json",
            ReportToJson(result.report, result.comparison).dump(2) + "\n");
  WriteFile(dir / "report.txt",
            FormatReportTable(result.report, result.comparison));
}

}  // namespace goodvibes
