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

#include "goodvibes/agents.h"

#include <json.hpp>

#include "goodvibes/error.h"

namespace goodvibes {

std::string_view VibrationSourceName(VibrationSource source) {
  switch (source) {
    case VibrationSource::kAuthPing: return "auth_ping";
    case VibrationSource::kNotification: return "notification";
    case VibrationSource::kInjected: return "injected";
  }
  return "unknown";
}

VibrationSource ParseVibrationSource(std::string_view name) {
  if (name == "auth_ping") return VibrationSource::kAuthPing;
  if (name == "notification") return VibrationSource::kNotification;
  if (name == "injected") return VibrationSource::kInjected;
  Throw(ErrorCode::kParse, "unknown vibration source '" + std::string(name) + "'");
}

PhoneAgent::PhoneAgent(DeviceIdentity identity, int64_t debounce_ms)
    : identity_(identity), debounce_ms_(debounce_ms) {
  if (identity.kind != DeviceKind::kPhone) {
    Throw(ErrorCode::kKindMismatch, "PhoneAgent needs a phone identity");
  }
  if (debounce_ms < 0) {
    Throw(ErrorCode::kInvalidArgument, "debounce must be non-negative");
  }
}

void PhoneAgent::AttachPairing(PairingRecord pairing) {
  sender_.emplace(std::move(pairing));
}

std::optional<AuthPing> PhoneAgent::OnScreenWake(int64_t now_ms, Rng& rng) {
  if (!sender_) Throw(ErrorCode::kNotPaired, "phone is not paired");
  if (last_wake_at_ms_ && now_ms - *last_wake_at_ms_ < debounce_ms_) {
    return std::nullopt;
  }
  AuthPing ping = sender_->CreatePing(send_counter_ + 1, now_ms, rng);
  ++send_counter_;
  last_wake_at_ms_ = now_ms;
  return ping;
}

std::string PhoneAgent::Snapshot() const {
  nlohmann::json j;
  j["kind"] = DeviceKindName(identity_.kind);
  j["device_id"] = identity_.id.ToHex();
  j["paired"] = paired();
  j["paired_watch_id"] =
      sender_ ? nlohmann::json(sender_->pairing().watch_id.ToHex()) : nullptr;
  j["send_counter"] = send_counter_;
  j["last_wake_at_ms"] =
      last_wake_at_ms_ ? nlohmann::json(*last_wake_at_ms_) : nullptr;
  j["debounce_ms"] = debounce_ms_;
  return j.dump();
}

WatchAgent::WatchAgent(DeviceIdentity identity, TimingParams timing)
    : identity_(identity), timing_(timing) {
  if (identity.kind != DeviceKind::kWatch) {
    Throw(ErrorCode::kKindMismatch, "WatchAgent needs a watch identity");
  }
  timing_.Validate();
}

void WatchAgent::AttachPairing(PairingRecord pairing) {
  pairing_ = std::move(pairing);
  replay_ = ReplayState();
}

void WatchAgent::Enroll(const PatternSpec& pattern, bool chosen_by_user) {
  if (!pairing_) Throw(ErrorCode::kNotPaired, "watch is not paired");
  if (enrolled_) {
    Throw(ErrorCode::kAlreadyEnrolled, "a pattern is already enrolled");
  }
  enrolled_ = pattern;
  chosen_by_user_ = chosen_by_user;
}

std::optional<VibrationEvent> WatchAgent::OnPingReceived(const AuthPing& ping,
                                                         int64_t now_ms) {
  if (!enrolled_) Throw(ErrorCode::kNotEnrolled, "no pattern enrolled");
  last_verify_ = VerifyPing(*pairing_, ping, replay_);
  if (!last_verify_->accepted()) return std::nullopt;
  accepted_counters_.push_back(ping.counter);
  return VibrationEvent{RenderTimeline(*enrolled_, timing_),
                        VibrationSource::kAuthPing, now_ms, ping.counter};
}

VibrationEvent WatchAgent::OnNotification(const PatternSpec& pattern,
                                          int64_t now_ms) {
  return VibrationEvent{RenderTimeline(pattern, timing_),
                        VibrationSource::kNotification, now_ms, 0};
}

VibrationEvent WatchAgent::Inject(const PatternSpec& pattern, int64_t now_ms) {
  return VibrationEvent{RenderTimeline(pattern, timing_),
                        VibrationSource::kInjected, now_ms, 0};
}

std::string WatchAgent::Snapshot() const {
  nlohmann::json j;
  j["kind"] = DeviceKindName(identity_.kind);
  j["device_id"] = identity_.id.ToHex();
  j["paired"] = paired();
  j["enrolled"] = enrolled_.has_value();
  j["chosen_by_user"] = chosen_by_user_;
  j["highest_accepted_counter"] = replay_.highest_accepted_counter();
  j["accepted_pings"] = accepted_counters_.size();
  return j.dump();
}

}  // namespace goodvibes
