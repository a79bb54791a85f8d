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

#ifndef GOODVIBES_AGENTS_H_
#define GOODVIBES_AGENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goodvibes/pattern.h"
#include "goodvibes/rng.h"
#include "goodvibes/secure_link.h"

namespace goodvibes {

enum class VibrationSource { kAuthPing, kNotification, kInjected };

std::string_view VibrationSourceName(VibrationSource source);
VibrationSource ParseVibrationSource(std::string_view name);

struct VibrationEvent {
  VibrationTimeline timeline;
  VibrationSource source = VibrationSource::kAuthPing;
  int64_t at_ms = 0;
  // Counter of the accepted ping that caused an auth_ping event; 0 otherwise.
  uint64_t ping_counter = 0;
};

// The phone side. Holds the pairing and a send counter, and by construction
// nothing about the user's vibration pattern: a phone in an attacker's hands
// reveals no part of the secret.
class PhoneAgent {
 public:
  static constexpr int64_t kDefaultDebounceMs = 2000;

  explicit PhoneAgent(DeviceIdentity identity,
                      int64_t debounce_ms = kDefaultDebounceMs);

  void AttachPairing(PairingRecord pairing);
  bool paired() const { return sender_.has_value(); }
  const DeviceIdentity& identity() const { return identity_; }
  uint64_t send_counter() const { return send_counter_; }
  int64_t debounce_ms() const { return debounce_ms_; }

  // Emits a ping with the next counter unless a ping went out less than
  // debounce_ms ago. Throws kNotPaired.
  std::optional<AuthPing> OnScreenWake(int64_t now_ms, Rng& rng);

  // JSON state snapshot (no key material).
  std::string Snapshot() const;

 private:
  DeviceIdentity identity_;
  int64_t debounce_ms_;
  std::optional<PingSender> sender_;
  uint64_t send_counter_ = 0;
  std::optional<int64_t> last_wake_at_ms_;
};

// The watch side: verifies pings and renders the enrolled pattern.
class WatchAgent {
 public:
  explicit WatchAgent(DeviceIdentity identity, TimingParams timing = {});

  void AttachPairing(PairingRecord pairing);
  bool paired() const { return pairing_.has_value(); }
  const DeviceIdentity& identity() const { return identity_; }
  const TimingParams& timing() const { return timing_; }

  // Throws kNotPaired or kAlreadyEnrolled.
  void Enroll(const PatternSpec& pattern, bool chosen_by_user);
  const std::optional<PatternSpec>& enrolled_pattern() const {
    return enrolled_;
  }
  bool chosen_by_user() const { return chosen_by_user_; }

  // Rejected pings are dropped silently. Throws kNotEnrolled.
  std::optional<VibrationEvent> OnPingReceived(const AuthPing& ping,
                                               int64_t now_ms);
  VibrationEvent OnNotification(const PatternSpec& pattern, int64_t now_ms);
  // Supervisor-triggered vibration.
  VibrationEvent Inject(const PatternSpec& pattern, int64_t now_ms);

  const std::optional<VerifyResult>& last_verify_result() const {
    return last_verify_;
  }
  // Counters of every ping accepted so far, in acceptance order.
  const std::vector<uint64_t>& accepted_counters() const {
    return accepted_counters_;
  }
  const ReplayState& replay_state() const { return replay_; }

  // JSON state snapshot. Reports whether a pattern is enrolled, not which.
  std::string Snapshot() const;

 private:
  DeviceIdentity identity_;
  TimingParams timing_;
  std::optional<PairingRecord> pairing_;
  ReplayState replay_;
  std::optional<PatternSpec> enrolled_;
  bool chosen_by_user_ = false;
  std::optional<VerifyResult> last_verify_;
  std::vector<uint64_t> accepted_counters_;
};

}  // namespace goodvibes

#endif  // GOODVIBES_AGENTS_H_
