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

#ifndef GOODVIBES_ERROR_H_
#define GOODVIBES_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace goodvibes {

// Every failure the library raises carries one of these codes. The numeric
// values are mirrored by gv_status in the C API and must stay stable.
enum class ErrorCode {
  kOk = 0,
  kEmptyPattern = 1,
  kInvalidToken = 2,
  kOutOfRange = 3,
  kInvalidTiming = 4,
  kAlreadyPaired = 5,
  kKindMismatch = 6,
  kCounterReused = 7,
  kNotPaired = 8,
  kAlreadyEnrolled = 9,
  kNotEnrolled = 10,
  kEmptyDistractorPool = 11,
  kWorldMisconfigured = 12,
  kUnreachableTarget = 13,
  kIndexGap = 14,
  kHeaderMissing = 15,
  kEmptyInput = 16,
  kInvalidConfig = 17,
  kInvalidCommand = 18,
  kResponseAlreadyRecorded = 19,
  kIo = 20,
  kParse = 21,
  kInvalidArgument = 22,
  kInternal = 23,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Throw(ErrorCode code, const std::string& message);

}  // namespace goodvibes

#endif  // GOODVIBES_ERROR_H_
