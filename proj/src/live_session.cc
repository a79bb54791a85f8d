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

#include "goodvibes/live_session.h"

#include <algorithm>

#include "goodvibes/error.h"

namespace goodvibes {
namespace {

using nlohmann::json;

LiveSession::Clock WallClock(int64_t base_ms) {
  const auto start = std::chrono::steady_clock::now();
  return [start, base_ms] {
    return base_ms + std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  };
}

json TimelineJson(const VibrationEvent& event) {
  return {{"timeline", event.timeline.ToString()},
          {"total_ms", TotalDuration(event.timeline)},
          {"source", VibrationSourceName(event.source)}};
}

}  // namespace

std::string_view CommandKindName(CommandKind kind) {
  switch (kind) {
    case CommandKind::kStartSession: return "start_session";
    case CommandKind::kAdvanceTrial: return "advance_trial";
    case CommandKind::kInjectVibration: return "inject_vibration";
    case CommandKind::kSuppressNext: return "suppress_next";
    case CommandKind::kRecordResponse: return "record_response";
    case CommandKind::kEndSession: return "end_session";
  }
  return "unknown";
}

CommandKind ParseCommandKind(std::string_view name) {
  for (CommandKind kind :
       {CommandKind::kStartSession, CommandKind::kAdvanceTrial,
        CommandKind::kInjectVibration, CommandKind::kSuppressNext,
        CommandKind::kRecordResponse, CommandKind::kEndSession}) {
    if (CommandKindName(kind) == name) return kind;
  }
  Throw(ErrorCode::kInvalidCommand, "unknown command '" + std::string(name) + "'");
}

ConsoleCommand ConsoleCommand::FromJson(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    Throw(ErrorCode::kInvalidCommand, "command needs a string 'kind'");
  }
  ConsoleCommand command;
  command.kind = ParseCommandKind(j["kind"].get<std::string>());
  auto text_field = [&](const char* key) -> std::optional<std::string> {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) {
      Throw(ErrorCode::kInvalidCommand, std::string("'") + key + "' must be a string");
    }
    return it->get<std::string>();
  };
  try {
    if (auto p = text_field("pattern")) command.pattern = PatternSpec::Parse(*p);
    if (auto r = text_field("response")) command.response = ParseResponse(*r);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidCommand) throw;
    Throw(ErrorCode::kInvalidCommand, e.what());
  }
  if (auto it = j.find("issued_at_ms"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) {
      Throw(ErrorCode::kInvalidCommand, "'issued_at_ms' must be an integer");
    }
    command.issued_at_ms = it->get<int64_t>();
  }
  if (command.kind == CommandKind::kInjectVibration && !command.pattern) {
    Throw(ErrorCode::kInvalidCommand, "inject_vibration needs a 'pattern'");
  }
  if (command.kind == CommandKind::kRecordResponse && !command.response) {
    Throw(ErrorCode::kInvalidCommand, "record_response needs a 'response'");
  }
  return command;
}

json ConsoleCommand::ToJson() const {
  json j;
  j["kind"] = CommandKindName(kind);
  j["pattern"] = pattern ? json(pattern->ToString()) : json(nullptr);
  j["response"] =
      response ? json(std::string(ResponseName(*response))) : json(nullptr);
  j["issued_at_ms"] = issued_at_ms ? json(*issued_at_ms) : json(nullptr);
  return j;
}

json CommandOutcome::ToJson() const {
  json j;
  j["ok"] = ok;
  if (!ok) {
    j["error"] = {{"code", ErrorCodeName(error)}, {"message", message}};
  }
  j["events"] = events;
  return j;
}

LiveSession::LiveSession(RunConfig config, Clock clock, bool /*recovering*/)
    : config_(std::move(config)),
      clock_(clock ? std::move(clock) : WallClock(0)),
      plan_(PlanParticipants(config_).at(
          static_cast<size_t>(config_.live_participant))),
      world_(MakeParticipantWorld(config_, plan_)),
      schedule_(BuildSchedule(plan_.schedule_seed, config_.counts, plan_.index)),
      trial_rng_(Rng(ParticipantSeed(config_, plan_.index)).Fork(4)),
      header_(MakeHeader(config_, plan_, "live")) {
  log_.SetHeader(header_);
}

LiveSession::LiveSession(RunConfig config,
                         std::optional<std::filesystem::path> log_path,
                         Clock clock)
    : LiveSession(std::move(config), std::move(clock), false) {
  if (log_path) {
    writer_ = std::make_unique<SessionLogWriter>(*log_path);
    writer_->WriteHeader(header_);
  }
}

std::unique_ptr<LiveSession> LiveSession::Recover(
    RunConfig config, const std::filesystem::path& log_path, Clock clock) {
  SessionLog existing = ReadSessionLog(log_path);
  int64_t last_ms = 0;
  for (const SessionLog::Annotation& a : existing.annotations()) {
    if (a.line.value("type", "") == "command") {
      last_ms = std::max(last_ms, a.line.value("issued_at_ms", int64_t{0}));
    }
  }
  if (!clock) clock = WallClock(last_ms);
  std::unique_ptr<LiveSession> session(
      new LiveSession(std::move(config), std::move(clock), true));
  if (!existing.header() || !(*existing.header() == session->header_)) {
    Throw(ErrorCode::kInvalidConfig,
          "log '" + log_path.string() + "' was written by a different configuration");
  }
  for (const SessionLog::Annotation& a : existing.annotations()) {
    if (a.line.value("type", "") != "command") continue;
    session->Submit(ConsoleCommand::FromJson(a.line));
  }
  if (session->log_.Serialize() != existing.Serialize()) {
    Throw(ErrorCode::kInternal, "replaying '" + log_path.string() +
                                    "' did not reproduce the recorded session");
  }
  session->writer_ =
      std::make_unique<SessionLogWriter>(log_path, std::move(existing));
  return session;
}

json& LiveSession::Emit(std::string type, json data) {
  json event;
  event["seq"] = events_.size();
  event["event"] = std::move(type);
  event["at_ms"] = now_ms_;
  event["data"] = std::move(data);
  events_.push_back(std::move(event));
  return events_.back();
}

void LiveSession::Annotate(const json& line) {
  log_.AppendAnnotation(line);
  if (writer_) writer_->AppendAnnotation(line);
}

void LiveSession::AppendRecord(const TrialRecord& record) {
  log_.AppendRecord(record);
  if (writer_) writer_->AppendRecord(record);
}

CommandOutcome LiveSession::Submit(ConsoleCommand command) {
  CommandOutcome outcome;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const int64_t requested =
        command.issued_at_ms ? *command.issued_at_ms : clock_();
    now_ms_ = std::max(now_ms_, requested);
    command.issued_at_ms = now_ms_;

    const size_t first_event = events_.size();
    const size_t records_before = log_.records().size();
    std::optional<TrialRecord> completed;
    try {
      Apply(command, outcome);
      if (current_ && current_->response &&
          static_cast<size_t>(current_->index) > records_before) {
        completed = *current_;
      }
    } catch (const Error& e) {
      outcome.ok = false;
      outcome.error = e.code();
      outcome.message = e.what();
    }

    json line = command.ToJson();
    line["type"] = "command";
    line["accepted"] = outcome.ok;
    line["error"] = outcome.ok ? json(nullptr)
                               : json(std::string(ErrorCodeName(outcome.error)));
    Annotate(line);
    for (size_t i = first_event; i < events_.size(); ++i) {
      json event_line = events_[i];
      event_line["type"] = "event";
      Annotate(event_line);
      outcome.events.push_back(events_[i]);
    }
    if (completed) AppendRecord(*completed);
  }
  events_cv_.notify_all();
  return outcome;
}

void LiveSession::Apply(const ConsoleCommand& command, CommandOutcome&) {
  auto require_running = [&] {
    if (phase_ == Phase::kIdle) {
      Throw(ErrorCode::kInvalidCommand, "session has not been started");
    }
    if (phase_ == Phase::kEnded) {
      Throw(ErrorCode::kInvalidCommand, "session has ended");
    }
  };
  auto sync_world_clock = [&] {
    world_.clock.AdvanceTo(std::max(world_.clock.now(), now_ms_));
  };

  switch (command.kind) {
    case CommandKind::kStartSession: {
      if (phase_ != Phase::kIdle) {
        Throw(ErrorCode::kInvalidCommand, "session already started");
      }
      phase_ = Phase::kRunning;
      Emit("session_started", {{"participant_id", plan_.id},
                               {"total_trials", schedule_.trials.size()}});
      return;
    }
    case CommandKind::kAdvanceTrial: {
      require_running();
      if (current_ && !current_->response) {
        Throw(ErrorCode::kInvalidCommand,
              "trial " + std::to_string(current_->index) +
                  " is still waiting for a response");
      }
      if (next_trial_ >= schedule_.trials.size()) {
        Throw(ErrorCode::kInvalidCommand, "all trials have been run");
      }
      sync_world_clock();
      const ScenarioId id = schedule_.trials[next_trial_];
      TrialControls controls;
      controls.suppress_auth_vibration = suppress_next_;
      if (id == ScenarioId::kS4) {
        controls.s4_cause = AbsenceCauseFor(config_.absence_mode, s4_seen_ + 1);
      }
      TrialRecord record = RunTrial(static_cast<int>(next_trial_ + 1), id,
                                    world_, controls, trial_rng_);
      if (id == ScenarioId::kS4) ++s4_seen_;
      suppress_next_ = false;
      ++next_trial_;
      Emit("trial_started", {{"trial", record.index},
                             {"scenario", ScenarioName(id)},
                             {"user_woke", record.user_woke},
                             {"absence_cause", AbsenceCauseName(record.absence_cause)}});
      if (record.suppressed_vibrations > 0) {
        Emit("vibration_suppressed",
             {{"trial", record.index}, {"count", record.suppressed_vibrations}});
      }
      if (record.stimulus) {
        Emit("vibration_emitted",
             {{"trial", record.index},
              {"timeline", record.stimulus->ToString()},
              {"total_ms", TotalDuration(*record.stimulus)},
              {"source", VibrationSourceName(*record.stimulus_source)},
              {"pattern", *record.stimulus_pattern},
              {"vibrated_at_ms", *record.stimulus_at_ms}});
      }
      current_ = std::move(record);
      return;
    }
    case CommandKind::kInjectVibration: {
      require_running();
      sync_world_clock();
      VibrationEvent event =
          world_.watch.Inject(*command.pattern, world_.clock.now());
      json data = TimelineJson(event);
      data["pattern"] = command.pattern->ToString();
      data["vibrated_at_ms"] = event.at_ms;
      data["trial"] = nullptr;
      if (current_ && !current_->response) {
        data["trial"] = current_->index;
        if (!current_->stimulus) {
          current_->stimulus = event.timeline;
          current_->stimulus_source = event.source;
          current_->stimulus_pattern = command.pattern->ToString();
          current_->stimulus_at_ms = event.at_ms;
        }
      }
      Emit("vibration_emitted", std::move(data));
      return;
    }
    case CommandKind::kSuppressNext: {
      require_running();
      suppress_next_ = true;
      Emit("suppression_armed", json::object());
      return;
    }
    case CommandKind::kRecordResponse: {
      require_running();
      if (!current_) {
        Throw(ErrorCode::kInvalidCommand, "no trial has been started");
      }
      current_->FillResponse(*command.response, now_ms_);
      Emit("response_recorded",
           {{"trial", current_->index},
            {"response", ResponseName(*command.response)},
            {"expected", ResponseName(current_->expected_response)},
            {"correct", current_->correct()}});
      if (next_trial_ == schedule_.trials.size()) {
        Emit("schedule_complete", {{"completed_trials", next_trial_}});
      }
      return;
    }
    case CommandKind::kEndSession: {
      require_running();
      phase_ = Phase::kEnded;
      Emit("session_ended", {{"completed_trials", log_.records().size()}});
      return;
    }
  }
}

json LiveSession::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  json j;
  j["phase"] = phase_ == Phase::kIdle      ? "idle"
               : phase_ == Phase::kRunning ? "running"
                                           : "ended";
  j["participant_id"] = plan_.id;
  j["total_trials"] = schedule_.trials.size();
  j["completed_trials"] = log_.records().size();
  j["suppress_next"] = suppress_next_;
  j["now_ms"] = now_ms_;
  j["event_count"] = events_.size();

  json schedule = json::array();
  for (size_t i = 0; i < schedule_.trials.size(); ++i) {
    std::string status = "pending";
    if (i + 1 < next_trial_ || (i + 1 == next_trial_ && current_ && current_->response)) {
      status = "done";
    } else if (i + 1 == next_trial_) {
      status = "active";
    }
    schedule.push_back({{"trial", i + 1},
                        {"scenario", ScenarioName(schedule_.trials[i])},
                        {"status", status}});
  }
  // The trial the supervisor is looking at: the active one, else the next.
  json current = nullptr;
  if (phase_ != Phase::kIdle) {
    if (current_ && !current_->response) {
      current = schedule[static_cast<size_t>(current_->index - 1)];
    } else if (next_trial_ < schedule_.trials.size()) {
      current = schedule[next_trial_];
    }
  }
  j["current_trial"] = current;
  j["schedule"] = std::move(schedule);
  j["phone"] = json::parse(world_.phone.Snapshot());
  j["watch"] = json::parse(world_.watch.Snapshot());
  return j;
}

std::string LiveSession::ScheduleExport() const { return schedule_.Export(); }

SessionLog LiveSession::Log() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

std::vector<json> LiveSession::EventsSince(uint64_t since) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (since >= events_.size()) return {};
  return {events_.begin() + static_cast<std::ptrdiff_t>(since), events_.end()};
}

std::vector<json> LiveSession::WaitForEvents(
    uint64_t since, std::chrono::milliseconds timeout) const {
  std::unique_lock<std::mutex> lock(mu_);
  events_cv_.wait_for(lock, timeout, [&] { return events_.size() > since; });
  if (since >= events_.size()) return {};
  return {events_.begin() + static_cast<std::ptrdiff_t>(since), events_.end()};
}

bool LiveSession::ended() const {
  std::lock_guard<std::mutex> lock(mu_);
  return phase_ == Phase::kEnded;
}

}  // namespace goodvibes
