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

#ifndef GOODVIBES_SECURE_LINK_H_
#define GOODVIBES_SECURE_LINK_H_

#include <array>
#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "goodvibes/rng.h"

namespace goodvibes {

enum class DeviceKind { kPhone, kWatch };

std::string_view DeviceKindName(DeviceKind kind);

class DeviceId {
 public:
  static constexpr size_t kSize = 8;

  DeviceId() = default;
  explicit DeviceId(const std::array<uint8_t, kSize>& bytes) : bytes_(bytes) {}

  static DeviceId Random(Rng& rng);
  // Throws kParse unless `hex` is exactly 16 hex digits.
  static DeviceId FromHex(std::string_view hex);

  const std::array<uint8_t, kSize>& bytes() const { return bytes_; }
  std::string ToHex() const;

  friend auto operator<=>(const DeviceId&, const DeviceId&) = default;

 private:
  std::array<uint8_t, kSize> bytes_{};
};

struct DeviceIdentity {
  DeviceId id;
  DeviceKind kind = DeviceKind::kPhone;
};

using SharedKey = std::array<uint8_t, 32>;
using Nonce = std::array<uint8_t, 16>;
using Tag = std::array<uint8_t, 32>;

struct PairingRecord {
  DeviceId phone_id;
  DeviceId watch_id;
  SharedKey shared_key{};
  int64_t created_at_ms = 0;
};

// Draws a fresh shared key from `rng`. Throws kKindMismatch unless `phone` is
// a phone and `watch` a watch, and kInvalidArgument if both carry the same id.
PairingRecord PairDevices(const DeviceIdentity& phone,
                          const DeviceIdentity& watch, Rng& rng,
                          int64_t now_ms = 0);

// Tracks active pairings so each (phone, watch) pair is paired at most once.
class PairingRegistry {
 public:
  // Throws kAlreadyPaired if the pair already has an active pairing.
  PairingRecord Pair(const DeviceIdentity& phone, const DeviceIdentity& watch,
                     Rng& rng, int64_t now_ms = 0);
  bool IsPaired(const DeviceId& phone, const DeviceId& watch) const;
  void Unpair(const DeviceId& phone, const DeviceId& watch);

 private:
  std::set<std::pair<DeviceId, DeviceId>> active_;
};

struct AuthPing {
  DeviceId sender_id;
  uint64_t counter = 0;
  Nonce nonce{};
  int64_t sent_at_ms = 0;
  Tag tag{};

  friend bool operator==(const AuthPing&, const AuthPing&) = default;
};

// Canonical byte encoding of the authenticated ping fields: sender_id,
// counter, nonce, sent_at, each preceded by its length as a big-endian u32;
// integers are big-endian 64-bit. See docs/ping_encoding.md.
std::vector<uint8_t> EncodePingFields(const DeviceId& sender_id,
                                      uint64_t counter, const Nonce& nonce,
                                      int64_t sent_at_ms);

// HMAC-SHA256.
Tag ComputeTag(std::span<const uint8_t> key, std::span<const uint8_t> message);

// Builds and tags a ping from the pairing's phone. No counter bookkeeping.
AuthPing SignPing(const PairingRecord& pairing, uint64_t counter,
                  const Nonce& nonce, int64_t sent_at_ms);

// Phone-side ping factory that refuses to reuse counters.
class PingSender {
 public:
  explicit PingSender(PairingRecord pairing) : pairing_(std::move(pairing)) {}

  // Throws kCounterReused unless counter > last_counter().
  AuthPing CreatePing(uint64_t counter, int64_t now_ms, Rng& rng);

  uint64_t last_counter() const { return last_counter_; }
  const PairingRecord& pairing() const { return pairing_; }

 private:
  PairingRecord pairing_;
  uint64_t last_counter_ = 0;
};

enum class RejectReason { kBadTag, kStaleCounter, kReplayedNonce };

std::string_view RejectReasonName(RejectReason reason);

struct VerifyResult {
  std::optional<RejectReason> reject;

  bool accepted() const { return !reject.has_value(); }
  static VerifyResult Accept() { return {}; }
  static VerifyResult Reject(RejectReason reason) { return {reason}; }
};

// Receiver-side replay window for one pairing.
class ReplayState {
 public:
  static constexpr size_t kNonceWindow = 1024;

  uint64_t highest_accepted_counter() const { return highest_; }
  bool SeenNonce(const Nonce& nonce) const;
  void RecordAccepted(uint64_t counter, const Nonce& nonce);

 private:
  uint64_t highest_ = 0;
  std::deque<Nonce> nonce_order_;
  std::set<Nonce> nonces_;
};

// Accepts iff the tag verifies under the pairing key for the pairing's phone,
// the counter is above everything accepted so far, and the nonce is unseen.
// Updates `state` only on acceptance.
VerifyResult VerifyPing(const PairingRecord& pairing, const AuthPing& ping,
                        ReplayState& state);

struct LinkModel {
  int64_t latency_min_ms = 0;
  int64_t latency_max_ms = 0;
  double loss_probability = 0.0;
  double duplicate_probability = 0.0;

  // Throws kInvalidArgument on negative or inverted latencies or
  // probabilities outside [0, 1].
  void Validate() const;
};

// Arrival times of each delivered copy; empty means the ping was dropped.
struct TransmitResult {
  std::vector<int64_t> arrivals_ms;

  bool dropped() const { return arrivals_ms.empty(); }
};

TransmitResult Transmit(const AuthPing& ping, const LinkModel& link, Rng& rng,
                        int64_t now_ms);

std::string ToHex(std::span<const uint8_t> bytes);
std::vector<uint8_t> FromHex(std::string_view hex);

}  // namespace goodvibes

#endif  // GOODVIBES_SECURE_LINK_H_
