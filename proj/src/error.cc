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

#include "goodvibes/error.h"

namespace goodvibes {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kEmptyPattern: return "EmptyPattern";
    case ErrorCode::kInvalidToken: return "InvalidToken";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kInvalidTiming: return "InvalidTiming";
    case ErrorCode::kAlreadyPaired: return "AlreadyPaired";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kCounterReused: return "CounterReused";
    case ErrorCode::kNotPaired: return "NotPaired";
    case ErrorCode::kAlreadyEnrolled: return "AlreadyEnrolled";
    case ErrorCode::kNotEnrolled: return "NotEnrolled";
    case ErrorCode::kEmptyDistractorPool: return "EmptyDistractorPool";
    case ErrorCode::kWorldMisconfigured: return "WorldMisconfigured";
    case ErrorCode::kUnreachableTarget: return "UnreachableTarget";
    case ErrorCode::kIndexGap: return "IndexGap";
    case ErrorCode::kHeaderMissing: return "HeaderMissing";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidCommand: return "InvalidCommand";
    case ErrorCode::kResponseAlreadyRecorded: return "ResponseAlreadyRecorded";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

void Throw(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace goodvibes
