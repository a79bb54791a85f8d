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

#include "goodvibes/secure_link.h"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <algorithm>

#include "goodvibes/error.h"

namespace goodvibes {
namespace {

void AppendField(std::vector<uint8_t>& out, std::span<const uint8_t> bytes) {
  const uint32_t len = static_cast<uint32_t>(bytes.size());
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>((len >> shift) & 0xff));
  }
  out.insert(out.end(), bytes.begin(), bytes.end());
}

std::array<uint8_t, 8> BigEndian64(uint64_t value) {
  std::array<uint8_t, 8> out{};
  for (int i = 7; i >= 0; --i) {
    out[static_cast<size_t>(i)] = static_cast<uint8_t>(value & 0xff);
    value >>= 8;
  }
  return out;
}

int HexDigit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string_view DeviceKindName(DeviceKind kind) {
  return kind == DeviceKind::kPhone ? "phone" : "watch";
}

std::string ToHex(std::span<const uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out += kDigits[b >> 4];
    out += kDigits[b & 0xf];
  }
  return out;
}

std::vector<uint8_t> FromHex(std::string_view hex) {
  if (hex.size() % 2 != 0) Throw(ErrorCode::kParse, "odd-length hex string");
  std::vector<uint8_t> out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = HexDigit(hex[2 * i]);
    int lo = HexDigit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) Throw(ErrorCode::kParse, "invalid hex digit");
    out[i] = static_cast<uint8_t>(hi << 4 | lo);
  }
  return out;
}

DeviceId DeviceId::Random(Rng& rng) {
  std::array<uint8_t, kSize> bytes{};
  rng.FillBytes(bytes.data(), bytes.size());
  return DeviceId(bytes);
}

DeviceId DeviceId::FromHex(std::string_view hex) {
  std::vector<uint8_t> raw = goodvibes::FromHex(hex);
  if (raw.size() != kSize) {
    Throw(ErrorCode::kParse, "device id must be " + std::to_string(kSize) +
                                 " bytes");
  }
  std::array<uint8_t, kSize> bytes{};
  std::copy(raw.begin(), raw.end(), bytes.begin());
  return DeviceId(bytes);
}

std::string DeviceId::ToHex() const { return goodvibes::ToHex(bytes_); }

PairingRecord PairDevices(const DeviceIdentity& phone,
                          const DeviceIdentity& watch, Rng& rng,
                          int64_t now_ms) {
  if (phone.kind != DeviceKind::kPhone || watch.kind != DeviceKind::kWatch) {
    Throw(ErrorCode::kKindMismatch, "pairing requires one phone and one watch");
  }
  if (phone.id == watch.id) {
    Throw(ErrorCode::kInvalidArgument, "cannot pair a device with itself");
  }
  PairingRecord record;
  record.phone_id = phone.id;
  record.watch_id = watch.id;
  rng.FillBytes(record.shared_key.data(), record.shared_key.size());
  record.created_at_ms = now_ms;
  return record;
}

PairingRecord PairingRegistry::Pair(const DeviceIdentity& phone,
                                    const DeviceIdentity& watch, Rng& rng,
                                    int64_t now_ms) {
  if (IsPaired(phone.id, watch.id)) {
    Throw(ErrorCode::kAlreadyPaired, "phone " + phone.id.ToHex() +
                                         " is already paired with watch " +
                                         watch.id.ToHex());
  }
  PairingRecord record = PairDevices(phone, watch, rng, now_ms);
  active_.emplace(phone.id, watch.id);
  return record;
}

bool PairingRegistry::IsPaired(const DeviceId& phone,
                               const DeviceId& watch) const {
  return active_.contains({phone, watch});
}

void PairingRegistry::Unpair(const DeviceId& phone, const DeviceId& watch) {
  active_.erase({phone, watch});
}

std::vector<uint8_t> EncodePingFields(const DeviceId& sender_id,
                                      uint64_t counter, const Nonce& nonce,
                                      int64_t sent_at_ms) {
  std::vector<uint8_t> out;
  out.reserve(4 * 4 + DeviceId::kSize + 8 + nonce.size() + 8);
  AppendField(out, sender_id.bytes());
  AppendField(out, BigEndian64(counter));
  AppendField(out, nonce);
  AppendField(out, BigEndian64(static_cast<uint64_t>(sent_at_ms)));
  return out;
}

Tag ComputeTag(std::span<const uint8_t> key, std::span<const uint8_t> message) {
  Tag tag{};
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
           message.data(), message.size(), tag.data(), &len) == nullptr ||
      len != tag.size()) {
    Throw(ErrorCode::kInternal, "HMAC-SHA256 failed");
  }
  return tag;
}

AuthPing SignPing(const PairingRecord& pairing, uint64_t counter,
                  const Nonce& nonce, int64_t sent_at_ms) {
  AuthPing ping;
  ping.sender_id = pairing.phone_id;
  ping.counter = counter;
  ping.nonce = nonce;
  ping.sent_at_ms = sent_at_ms;
  ping.tag = ComputeTag(pairing.shared_key,
                        EncodePingFields(ping.sender_id, counter, nonce,
                                         sent_at_ms));
  return ping;
}

AuthPing PingSender::CreatePing(uint64_t counter, int64_t now_ms, Rng& rng) {
  if (counter <= last_counter_) {
    Throw(ErrorCode::kCounterReused,
          "counter " + std::to_string(counter) + " not above last used " +
              std::to_string(last_counter_));
  }
  Nonce nonce{};
  rng.FillBytes(nonce.data(), nonce.size());
  last_counter_ = counter;
  return SignPing(pairing_, counter, nonce, now_ms);
}

std::string_view RejectReasonName(RejectReason reason) {
  switch (reason) {
    case RejectReason::kBadTag: return "BadTag";
    case RejectReason::kStaleCounter: return "StaleCounter";
    case RejectReason::kReplayedNonce: return "ReplayedNonce";
  }
  return "Unknown";
}

bool ReplayState::SeenNonce(const Nonce& nonce) const {
  return nonces_.contains(nonce);
}

void ReplayState::RecordAccepted(uint64_t counter, const Nonce& nonce) {
  highest_ = std::max(highest_, counter);
  if (nonces_.insert(nonce).second) {
    nonce_order_.push_back(nonce);
    if (nonce_order_.size() > kNonceWindow) {
      nonces_.erase(nonce_order_.front());
      nonce_order_.pop_front();
    }
  }
}

VerifyResult VerifyPing(const PairingRecord& pairing, const AuthPing& ping,
                        ReplayState& state) {
  // A ping naming a different sender is not authentic for this pairing, even
  // if someone holding the key tagged it.
  if (ping.sender_id != pairing.phone_id) {
    return VerifyResult::Reject(RejectReason::kBadTag);
  }
  const Tag expected = ComputeTag(
      pairing.shared_key,
      EncodePingFields(ping.sender_id, ping.counter, ping.nonce,
                       ping.sent_at_ms));
  if (CRYPTO_memcmp(expected.data(), ping.tag.data(), expected.size()) != 0) {
    return VerifyResult::Reject(RejectReason::kBadTag);
  }
  if (ping.counter <= state.highest_accepted_counter()) {
    return VerifyResult::Reject(RejectReason::kStaleCounter);
  }
  if (state.SeenNonce(ping.nonce)) {
    return VerifyResult::Reject(RejectReason::kReplayedNonce);
  }
  state.RecordAccepted(ping.counter, ping.nonce);
  return VerifyResult::Accept();
}

void LinkModel::Validate() const {
  if (latency_min_ms < 0 || latency_max_ms < latency_min_ms) {
    Throw(ErrorCode::kInvalidArgument, "link latency range is invalid");
  }
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_unit(loss_probability) || !in_unit(duplicate_probability)) {
    Throw(ErrorCode::kInvalidArgument, "link probabilities must be in [0, 1]");
  }
}

TransmitResult Transmit(const AuthPing& /*ping*/, const LinkModel& link,
                        Rng& rng, int64_t now_ms) {
  link.Validate();
  TransmitResult result;
  // Fixed draw order (loss, latency, duplicate, duplicate latency) keeps
  // outcomes reproducible under a seed.
  if (rng.Bernoulli(link.loss_probability)) return result;
  result.arrivals_ms.push_back(
      now_ms + rng.UniformInt(link.latency_min_ms, link.latency_max_ms));
  if (rng.Bernoulli(link.duplicate_probability)) {
    result.arrivals_ms.push_back(
        now_ms + rng.UniformInt(link.latency_min_ms, link.latency_max_ms));
  }
  return result;
}

}  // namespace goodvibes
