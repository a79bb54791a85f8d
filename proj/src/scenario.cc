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

#include "goodvibes/scenario.h"

#include <algorithm>
#include <cctype>

#include "goodvibes/error.h"

namespace goodvibes {

std::string_view ScenarioName(ScenarioId id) {
  static constexpr std::string_view kNames[] = {"S1", "S2", "S3", "S4", "S5"};
  return kNames[ScenarioIndex(id)];
}

ScenarioId ParseScenario(std::string_view name) {
  if (name.size() == 2 && (name[0] == 'S' || name[0] == 's')) {
    name.remove_prefix(1);
  }
  if (name.size() == 1 && name[0] >= '1' && name[0] <= '5') {
    return static_cast<ScenarioId>(name[0] - '1');
  }
  Throw(ErrorCode::kParse, "unknown scenario '" + std::string(name) + "'");
}

std::string_view ResponseName(ParticipantResponse response) {
  switch (response) {
    case ParticipantResponse::kRecognizedOwnOnWake:
      return "recognized_own_on_wake";
    case ParticipantResponse::kReportAbsentOrWrong:
      return "report_absent_or_wrong";
    case ParticipantResponse::kReportUnexpectedOwn:
      return "report_unexpected_own";
    case ParticipantResponse::kNoReport:
      return "no_report";
  }
  return "unknown";
}

ParticipantResponse ParseResponse(std::string_view name) {
  if (name == "recognized_own_on_wake") {
    return ParticipantResponse::kRecognizedOwnOnWake;
  }
  if (name == "report_absent_or_wrong" || name == "report_absent" ||
      name == "report_wrong") {
    return ParticipantResponse::kReportAbsentOrWrong;
  }
  if (name == "report_unexpected_own") {
    return ParticipantResponse::kReportUnexpectedOwn;
  }
  if (name == "no_report") return ParticipantResponse::kNoReport;
  Throw(ErrorCode::kParse, "unknown response '" + std::string(name) + "'");
}

ParticipantResponse ExpectedResponse(ScenarioId id) {
  switch (id) {
    case ScenarioId::kS1: return ParticipantResponse::kRecognizedOwnOnWake;
    case ScenarioId::kS2: return ParticipantResponse::kNoReport;
    case ScenarioId::kS3: return ParticipantResponse::kReportUnexpectedOwn;
    case ScenarioId::kS4: return ParticipantResponse::kReportAbsentOrWrong;
    case ScenarioId::kS5: return ParticipantResponse::kReportAbsentOrWrong;
  }
  return ParticipantResponse::kNoReport;
}

ParticipantResponse LapseResponse(ScenarioId id) {
  switch (id) {
    case ScenarioId::kS1: return ParticipantResponse::kReportAbsentOrWrong;
    case ScenarioId::kS2: return ParticipantResponse::kReportUnexpectedOwn;
    case ScenarioId::kS3: return ParticipantResponse::kNoReport;
    case ScenarioId::kS4: return ParticipantResponse::kRecognizedOwnOnWake;
    case ScenarioId::kS5: return ParticipantResponse::kRecognizedOwnOnWake;
  }
  return ParticipantResponse::kNoReport;
}

const Scenario& Scenario::Get(ScenarioId id) {
  static const Scenario kScenarios[] = {
      {ScenarioId::kS1, true, WatchStimulus::kEnrolledPattern},
      {ScenarioId::kS2, false, WatchStimulus::kDistractorPattern},
      {ScenarioId::kS3, false, WatchStimulus::kEnrolledPattern},
      {ScenarioId::kS4, true, WatchStimulus::kNone},
      {ScenarioId::kS5, true, WatchStimulus::kDistractorPattern},
  };
  return kScenarios[ScenarioIndex(id)];
}

std::string SessionSchedule::Export() const {
  std::string out;
  for (size_t i = 0; i < trials.size(); ++i) {
    out += std::to_string(i + 1);
    out += ' ';
    out += ScenarioName(trials[i]);
    out += '\n';
  }
  return out;
}

SessionSchedule BuildSchedule(uint64_t seed, const ScenarioCounts& counts,
                              int participant_id) {
  SessionSchedule schedule;
  schedule.seed = seed;
  schedule.participant_id = participant_id;
  for (ScenarioId id : kAllScenarios) {
    const int count = counts[ScenarioIndex(id)];
    if (count < 0) {
      Throw(ErrorCode::kInvalidArgument, "scenario counts must be >= 0");
    }
    schedule.trials.insert(schedule.trials.end(), static_cast<size_t>(count),
                           id);
  }
  Rng rng(MixSeed(seed));
  for (size_t i = schedule.trials.size(); i > 1; --i) {
    const auto j = static_cast<size_t>(
        rng.UniformInt(0, static_cast<int64_t>(i) - 1));
    std::swap(schedule.trials[i - 1], schedule.trials[j]);
  }
  return schedule;
}

PatternSpec PickDistractor(const PatternSpec& enrolled,
                           std::span<const PatternSpec> pool, Rng& rng,
                           const TimingParams& timing) {
  const VibrationTimeline own = RenderTimeline(enrolled, timing);
  std::vector<const PatternSpec*> candidates;
  for (const PatternSpec& p : pool) {
    if (p != enrolled && !TimelinesMatch(RenderTimeline(p, timing), own, 0)) {
      candidates.push_back(&p);
    }
  }
  if (candidates.empty()) {
    Throw(ErrorCode::kEmptyDistractorPool,
          "no distractor differs from enrolled pattern '" +
              enrolled.ToString() + "'");
  }
  const auto pick = rng.UniformInt(0, static_cast<int64_t>(candidates.size()) - 1);
  return *candidates[static_cast<size_t>(pick)];
}

void VirtualClock::AdvanceTo(int64_t t_ms) {
  if (t_ms < now_ms_) {
    Throw(ErrorCode::kInvalidArgument, "virtual clock cannot move backwards");
  }
  now_ms_ = t_ms;
}

void EventLoop::Schedule(int64_t at_ms, std::function<void()> action) {
  queue_.push({at_ms, next_seq_++, std::move(action)});
}

void EventLoop::Run(VirtualClock& clock) {
  while (!queue_.empty()) {
    Entry entry = queue_.top();
    queue_.pop();
    clock.AdvanceTo(std::max(clock.now(), entry.at_ms));
    entry.action();
  }
}

std::string_view AbsenceCauseName(AbsenceCause cause) {
  switch (cause) {
    case AbsenceCause::kNone: return "none";
    case AbsenceCause::kPhishingPhone: return "phishing_phone";
    case AbsenceCause::kSupervisorSuppression: return "supervisor_suppression";
  }
  return "unknown";
}

AbsenceCause ParseAbsenceCause(std::string_view name) {
  if (name == "none") return AbsenceCause::kNone;
  if (name == "phishing_phone") return AbsenceCause::kPhishingPhone;
  if (name == "supervisor_suppression") {
    return AbsenceCause::kSupervisorSuppression;
  }
  Throw(ErrorCode::kParse, "unknown absence cause '" + std::string(name) + "'");
}

std::string_view AbsenceModeName(AbsenceMode mode) {
  switch (mode) {
    case AbsenceMode::kAlternate: return "alternate";
    case AbsenceMode::kPhishingOnly: return "phishing";
    case AbsenceMode::kSuppressionOnly: return "suppression";
  }
  return "unknown";
}

AbsenceMode ParseAbsenceMode(std::string_view name) {
  if (name == "alternate") return AbsenceMode::kAlternate;
  if (name == "phishing") return AbsenceMode::kPhishingOnly;
  if (name == "suppression") return AbsenceMode::kSuppressionOnly;
  Throw(ErrorCode::kParse, "unknown absence mode '" + std::string(name) + "'");
}

AbsenceCause AbsenceCauseFor(AbsenceMode mode, int occurrence) {
  switch (mode) {
    case AbsenceMode::kPhishingOnly: return AbsenceCause::kPhishingPhone;
    case AbsenceMode::kSuppressionOnly:
      return AbsenceCause::kSupervisorSuppression;
    case AbsenceMode::kAlternate:
      return occurrence % 2 == 1 ? AbsenceCause::kPhishingPhone
                                 : AbsenceCause::kSupervisorSuppression;
  }
  return AbsenceCause::kPhishingPhone;
}

World MakeWorld(const WorldOptions& options, const PatternSpec& pattern,
                bool chosen_by_user, Rng& rng) {
  options.timing.Validate();
  options.link.Validate();
  const DeviceIdentity phone_id{DeviceId::Random(rng), DeviceKind::kPhone};
  const DeviceIdentity watch_id{DeviceId::Random(rng), DeviceKind::kWatch};

  PairingRegistry registry;
  PairingRecord pairing = registry.Pair(phone_id, watch_id, rng);

  // Look-alike device: same advertised id, key it could never have learned.
  PairingRecord forged = pairing;
  rng.FillBytes(forged.shared_key.data(), forged.shared_key.size());

  World world{PhoneAgent(phone_id, options.debounce_ms),
              PhoneAgent(phone_id, options.debounce_ms),
              WatchAgent(watch_id, options.timing),
              options.link,
              VirtualClock(),
              options.distractor_pool};
  world.phone.AttachPairing(pairing);
  world.phishing_phone.AttachPairing(forged);
  world.watch.AttachPairing(pairing);
  world.watch.Enroll(pattern, chosen_by_user);
  return world;
}

void TrialRecord::FillResponse(ParticipantResponse value, int64_t at_ms) {
  if (response) {
    Throw(ErrorCode::kResponseAlreadyRecorded,
          "trial " + std::to_string(index) + " already has a response");
  }
  response = value;
  responded_at_ms = at_ms;
}

TrialRecord RunTrial(int index, ScenarioId scenario, World& world,
                     const TrialControls& controls, Rng& rng) {
  if (!world.phone.paired() || !world.watch.paired() ||
      !world.watch.enrolled_pattern()) {
    Throw(ErrorCode::kWorldMisconfigured,
          "genuine phone and watch must be paired and enrolled");
  }
  const Scenario& spec = Scenario::Get(scenario);
  const PatternSpec& enrolled = *world.watch.enrolled_pattern();

  TrialRecord record;
  record.index = index;
  record.scenario = scenario;
  record.user_woke = spec.user_initiates_wake;
  record.expected_response = ExpectedResponse(scenario);
  record.started_at_ms = world.clock.now();

  std::optional<PatternSpec> distractor = controls.distractor;
  if (spec.watch_stimulus == WatchStimulus::kDistractorPattern && !distractor) {
    distractor = PickDistractor(enrolled, world.distractor_pool, rng,
                                world.watch.timing());
  }

  bool suppress_auth = controls.suppress_auth_vibration;
  PhoneAgent* waking_phone = nullptr;
  switch (scenario) {
    case ScenarioId::kS1:
    case ScenarioId::kS3:  // S3: somebody else picks up the genuine phone.
      waking_phone = &world.phone;
      break;
    case ScenarioId::kS2:
      break;
    case ScenarioId::kS4:
      record.absence_cause =
          controls.s4_cause == AbsenceCause::kSupervisorSuppression
              ? AbsenceCause::kSupervisorSuppression
              : AbsenceCause::kPhishingPhone;
      if (record.absence_cause == AbsenceCause::kPhishingPhone) {
        waking_phone = &world.phishing_phone;
      } else {
        waking_phone = &world.phone;
        suppress_auth = true;
      }
      break;
    case ScenarioId::kS5:
      waking_phone = &world.phone;
      suppress_auth = true;
      break;
  }

  EventLoop loop;
  std::vector<std::pair<VibrationEvent, std::string>> felt;
  const int64_t start = record.started_at_ms;

  auto deliver = [&](const AuthPing& ping) {
    const int64_t now = world.clock.now();
    std::optional<VibrationEvent> event = world.watch.OnPingReceived(ping, now);
    if (!event) return;
    if (!suppress_auth) {
      felt.emplace_back(std::move(*event), enrolled.ToString());
      return;
    }
    ++record.suppressed_vibrations;
    // S5: the swallowed auth vibration is replaced by a different pattern.
    if (scenario == ScenarioId::kS5 && record.suppressed_vibrations == 1) {
      felt.emplace_back(world.watch.Inject(*distractor, now),
                        distractor->ToString());
    }
  };

  if (waking_phone != nullptr) {
    loop.Schedule(start, [&, waking_phone] {
      const int64_t now = world.clock.now();
      std::optional<AuthPing> ping = waking_phone->OnScreenWake(now, rng);
      if (!ping) return;
      TransmitResult tx = Transmit(*ping, world.link, rng, now);
      for (int64_t arrival : tx.arrivals_ms) {
        loop.Schedule(arrival, [&, p = *ping] { deliver(p); });
      }
    });
  }
  if (scenario == ScenarioId::kS2) {
    loop.Schedule(start, [&] {
      felt.emplace_back(world.watch.OnNotification(*distractor,
                                                   world.clock.now()),
                        distractor->ToString());
    });
  }
  loop.Run(world.clock);

  if (!felt.empty()) {
    const auto& [event, pattern] = felt.front();
    record.stimulus = event.timeline;
    record.stimulus_source = event.source;
    record.stimulus_pattern = pattern;
    record.stimulus_at_ms = event.at_ms;
  }
  return record;
}

std::vector<TrialRecord> RunSession(const SessionSchedule& schedule,
                                    World& world,
                                    const PerceiverProfile& profile, Rng& rng,
                                    const SessionOptions& options) {
  profile.Validate();
  if (options.min_gap_ms <= 0 || options.max_gap_ms < options.min_gap_ms) {
    Throw(ErrorCode::kInvalidArgument, "inter-trial gap range is invalid");
  }
  Rng world_rng = rng.Fork(1);
  Rng perceiver_rng = rng.Fork(2);
  Rng gap_rng = rng.Fork(3);

  const VibrationTimeline enrolled_timeline =
      RenderTimeline(*world.watch.enrolled_pattern(), world.watch.timing());
  std::vector<TrialRecord> records;
  records.reserve(schedule.trials.size());
  int s4_seen = 0;
  for (size_t i = 0; i < schedule.trials.size(); ++i) {
    const ScenarioId id = schedule.trials[i];
    world.clock.AdvanceBy(
        gap_rng.UniformInt(options.min_gap_ms, options.max_gap_ms));
    TrialControls controls;
    if (id == ScenarioId::kS4) {
      controls.s4_cause = AbsenceCauseFor(options.absence_mode, ++s4_seen);
    }
    TrialRecord record =
        RunTrial(static_cast<int>(i + 1), id, world, controls, world_rng);
    const ParticipantResponse response = Perceive(
        record.PerceiverView(), enrolled_timeline, profile, perceiver_rng);
    int64_t answered_at = record.started_at_ms;
    if (record.stimulus) {
      answered_at = *record.stimulus_at_ms + TotalDuration(*record.stimulus);
    }
    answered_at = std::max(answered_at, world.clock.now()) +
                  options.response_delay_ms;
    world.clock.AdvanceTo(answered_at);
    record.FillResponse(response, answered_at);
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace goodvibes
