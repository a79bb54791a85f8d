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

#ifndef GOODVIBES_SCENARIO_H_
#define GOODVIBES_SCENARIO_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "goodvibes/agents.h"
#include "goodvibes/pattern.h"
#include "goodvibes/perceiver.h"
#include "goodvibes/rng.h"
#include "goodvibes/scenario_types.h"
#include "goodvibes/secure_link.h"

namespace goodvibes {

enum class WatchStimulus { kEnrolledPattern, kDistractorPattern, kNone };

struct Scenario {
  ScenarioId id;
  bool user_initiates_wake;
  WatchStimulus watch_stimulus;

  static const Scenario& Get(ScenarioId id);
};

struct SessionSchedule {
  std::vector<ScenarioId> trials;
  uint64_t seed = 0;
  int participant_id = 0;

  // One "<index> <scenario>" line per trial, 1-based.
  std::string Export() const;
};

// Seeded Fisher-Yates shuffle of the count multiset. The order depends only
// on `seed` and `counts`. Throws kInvalidArgument on negative counts.
SessionSchedule BuildSchedule(uint64_t seed,
                              const ScenarioCounts& counts = kStudyCounts,
                              int participant_id = 0);

// Uniform draw among pool entries whose rendered timeline differs from the
// enrolled one. Throws kEmptyDistractorPool if there are none.
PatternSpec PickDistractor(const PatternSpec& enrolled,
                           std::span<const PatternSpec> pool, Rng& rng,
                           const TimingParams& timing = {});

class VirtualClock {
 public:
  int64_t now() const { return now_ms_; }
  // Throws kInvalidArgument when asked to move backwards.
  void AdvanceTo(int64_t t_ms);
  void AdvanceBy(int64_t delta_ms) { AdvanceTo(now_ms_ + delta_ms); }

 private:
  int64_t now_ms_ = 0;
};

// Minimal discrete-event loop: callbacks run in (time, insertion) order and
// may schedule further callbacks.
class EventLoop {
 public:
  void Schedule(int64_t at_ms, std::function<void()> action);
  void Run(VirtualClock& clock);
  bool empty() const { return queue_.empty(); }

 private:
  struct Entry {
    int64_t at_ms;
    uint64_t seq;
    std::function<void()> action;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.at_ms != b.at_ms ? a.at_ms > b.at_ms : a.seq > b.seq;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
  uint64_t next_seq_ = 0;
};

// Why the watch stayed silent in a wake-without-vibration trial.
enum class AbsenceCause { kNone, kPhishingPhone, kSupervisorSuppression };

std::string_view AbsenceCauseName(AbsenceCause cause);
AbsenceCause ParseAbsenceCause(std::string_view name);

struct WorldOptions {
  TimingParams timing;
  LinkModel link{20, 80, 0.0, 0.0};
  int64_t debounce_ms = PhoneAgent::kDefaultDebounceMs;
  std::vector<PatternSpec> distractor_pool;
};

// The genuine phone and watch, a look-alike phishing phone, the radio link
// between them, and the virtual clock.
struct World {
  PhoneAgent phone;
  PhoneAgent phishing_phone;
  WatchAgent watch;
  LinkModel link;
  VirtualClock clock;
  std::vector<PatternSpec> distractor_pool;
};

// Creates identities, pairs phone and watch, enrolls `pattern`. The phishing
// phone spoofs the genuine phone's id but holds an unrelated key.
World MakeWorld(const WorldOptions& options, const PatternSpec& pattern,
                bool chosen_by_user, Rng& rng);

// Supervisor-side overrides for a single trial.
struct TrialControls {
  // Cause used for S4. kNone is treated as kPhishingPhone.
  AbsenceCause s4_cause = AbsenceCause::kPhishingPhone;
  // Swallow any auth vibration the watch would emit in this trial.
  bool suppress_auth_vibration = false;
  // Distractor for S2/S5; drawn from the world's pool when absent.
  std::optional<PatternSpec> distractor;
};

struct TrialRecord {
  int index = 0;
  ScenarioId scenario = ScenarioId::kS1;
  bool user_woke = false;
  std::optional<VibrationTimeline> stimulus;
  std::optional<VibrationSource> stimulus_source;
  // Canonical pattern behind the stimulus (ground truth, supervisor only).
  std::optional<std::string> stimulus_pattern;
  AbsenceCause absence_cause = AbsenceCause::kNone;
  int suppressed_vibrations = 0;
  ParticipantResponse expected_response =
      ParticipantResponse::kRecognizedOwnOnWake;
  std::optional<ParticipantResponse> response;
  int64_t started_at_ms = 0;
  std::optional<int64_t> stimulus_at_ms;
  std::optional<int64_t> responded_at_ms;

  // Throws kResponseAlreadyRecorded on a second call.
  void FillResponse(ParticipantResponse value, int64_t at_ms);
  bool correct() const { return response && *response == expected_response; }
  StimulusView PerceiverView() const { return {user_woke, stimulus}; }

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Plays one scenario on the world's event loop starting at clock.now(). The
// returned record has no response yet. Throws kWorldMisconfigured if the
// genuine devices are not paired and enrolled.
TrialRecord RunTrial(int index, ScenarioId scenario, World& world,
                     const TrialControls& controls, Rng& rng);

enum class AbsenceMode { kAlternate, kPhishingOnly, kSuppressionOnly };

std::string_view AbsenceModeName(AbsenceMode mode);
AbsenceMode ParseAbsenceMode(std::string_view name);

struct SessionOptions {
  int64_t min_gap_ms = 60'000;
  int64_t max_gap_ms = 120'000;
  // Delay between the end of a stimulus (or the trial start) and the answer.
  int64_t response_delay_ms = 1'500;
  AbsenceMode absence_mode = AbsenceMode::kAlternate;
};

// Cause for the n-th (1-based) S4 trial in a session.
AbsenceCause AbsenceCauseFor(AbsenceMode mode, int occurrence);

// Runs the schedule against a simulated participant. Deterministic in `rng`.
std::vector<TrialRecord> RunSession(const SessionSchedule& schedule,
                                    World& world,
                                    const PerceiverProfile& profile, Rng& rng,
                                    const SessionOptions& options = {});

}  // namespace goodvibes

#endif  // GOODVIBES_SCENARIO_H_
