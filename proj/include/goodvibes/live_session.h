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

#ifndef GOODVIBES_LIVE_SESSION_H_
#define GOODVIBES_LIVE_SESSION_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "goodvibes/error.h"
#include "goodvibes/metrics.h"
#include "goodvibes/run_config.h"
#include "goodvibes/scenario.h"
#include "goodvibes/simulate.h"

namespace goodvibes {

enum class CommandKind {
  kStartSession,
  kAdvanceTrial,
  kInjectVibration,
  kSuppressNext,
  kRecordResponse,
  kEndSession,
};

std::string_view CommandKindName(CommandKind kind);
CommandKind ParseCommandKind(std::string_view name);

struct ConsoleCommand {
  CommandKind kind = CommandKind::kStartSession;
  std::optional<PatternSpec> pattern;           // inject_vibration
  std::optional<ParticipantResponse> response;  // record_response
  // Virtual time; filled by the session when absent.
  std::optional<int64_t> issued_at_ms;

  // Wire form: {"kind": ..., "pattern": ..., "response": ...}. Throws
  // kInvalidCommand on malformed input.
  static ConsoleCommand FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
};

struct CommandOutcome {
  bool ok = true;
  ErrorCode error = ErrorCode::kOk;
  std::string message;
  // Events emitted while applying the command.
  std::vector<nlohmann::json> events;

  nlohmann::json ToJson() const;
};

// A supervisor-driven session for one participant. Commands are applied one
// at a time under an internal lock; every command and every emitted event is
// appended to the session log, so replaying a log's commands reproduces the
// session (see Recover).
class LiveSession {
 public:
  // Milliseconds since the session's virtual epoch.
  using Clock = std::function<int64_t()>;

  // Uses a steady wall clock when `clock` is empty. Writes the header to
  // `log_path` when given.
  LiveSession(RunConfig config, std::optional<std::filesystem::path> log_path,
              Clock clock = {});

  // Rebuilds a session by replaying the commands recorded in `log_path`,
  // then continues appending to the same file.
  static std::unique_ptr<LiveSession> Recover(
      RunConfig config, const std::filesystem::path& log_path,
      Clock clock = {});

  CommandOutcome Submit(ConsoleCommand command);

  nlohmann::json Snapshot() const;
  std::string ScheduleExport() const;
  SessionLog Log() const;

  // Events with seq >= since.
  std::vector<nlohmann::json> EventsSince(uint64_t since) const;
  // Blocks until an event with seq >= since exists or `timeout` expires.
  std::vector<nlohmann::json> WaitForEvents(uint64_t since,
                                            std::chrono::milliseconds timeout) const;
  bool ended() const;

 private:
  enum class Phase { kIdle, kRunning, kEnded };

  LiveSession(RunConfig config, Clock clock, bool recovering);
  void Apply(const ConsoleCommand& command, CommandOutcome& outcome);
  nlohmann::json& Emit(std::string type, nlohmann::json data);
  void Annotate(const nlohmann::json& line);
  void AppendRecord(const TrialRecord& record);

  RunConfig config_;
  Clock clock_;
  ParticipantPlan plan_;
  World world_;
  SessionSchedule schedule_;
  Rng trial_rng_;
  SessionHeader header_;

  mutable std::mutex mu_;
  mutable std::condition_variable events_cv_;
  Phase phase_ = Phase::kIdle;
  size_t next_trial_ = 0;  // 0-based index of the next trial to start
  std::optional<TrialRecord> current_;
  bool suppress_next_ = false;
  int s4_seen_ = 0;
  int64_t now_ms_ = 0;
  std::vector<nlohmann::json> events_;
  SessionLog log_;
  std::unique_ptr<SessionLogWriter> writer_;
};

}  // namespace goodvibes

#endif  // GOODVIBES_LIVE_SESSION_H_
