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

#ifndef GOODVIBES_SIMULATE_H_
#define GOODVIBES_SIMULATE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "goodvibes/metrics.h"
#include "goodvibes/run_config.h"

namespace goodvibes {

struct ParticipantPlan {
  int index = 0;
  std::string id;
  PatternSpec pattern = PatternSpec::Parse("2");
  bool chosen_by_user = false;
  std::optional<ExperienceLevel> experience;
  PerceiverProfile profile;
  uint64_t schedule_seed = 0;
};

// Deterministic per-participant setup: pattern, selection condition,
// experience label (9:8:13 daily/sometimes/none, scaled), and profile.
std::vector<ParticipantPlan> PlanParticipants(const RunConfig& config);

// Seed of the random stream owned by one participant.
uint64_t ParticipantSeed(const RunConfig& config, int index);

// Builds the world a participant's sessions run in.
World MakeParticipantWorld(const RunConfig& config,
                           const ParticipantPlan& plan);

SessionHeader MakeHeader(const RunConfig& config, const ParticipantPlan& plan,
                         std::string mode);

SessionLog SimulateParticipant(const RunConfig& config,
                               const ParticipantPlan& plan);

struct SimulationResult {
  RunConfig config;
  std::vector<SessionLog> logs;
  AggregateReport report;
  Comparison comparison;

  size_t record_count() const;
};

// Validates the config, then simulates every participant.
SimulationResult RunSimulation(const RunConfig& config);

// config.json, sessions/<participant>.jsonl, report.json, report.txt.
void WriteSimulationOutputs(const SimulationResult& result,
                            const std::filesystem::path& dir);

}  // namespace goodvibes

#endif  // GOODVIBES_SIMULATE_H_
