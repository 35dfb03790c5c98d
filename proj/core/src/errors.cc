// Copyright 2026 The causal-bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "causalbench/errors.h"

namespace causalbench {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
      return "ConfigError";
    case ErrorCode::kUnknownRole:
      return "UnknownRole";
    case ErrorCode::kDegenerate:
      return "Degenerate";
    case ErrorCode::kSingularDesign:
      return "SingularDesign";
    case ErrorCode::kTooFewSamples:
      return "TooFewSamples";
    case ErrorCode::kEmptyArm:
      return "EmptyArm";
    case ErrorCode::kNoMatches:
      return "NoMatches";
    case ErrorCode::kZeroGroupWeight:
      return "ZeroGroupWeight";
    case ErrorCode::kZeroGroup:
      return "ZeroGroup";
    case ErrorCode::kSchemaMismatch:
      return "SchemaMismatch";
    case ErrorCode::kNonFinite:
      return "NonFinite";
    case ErrorCode::kEmptyGroup:
      return "EmptyGroup";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kMissingPotentialOutcomes:
      return "MissingPotentialOutcomes";
    case ErrorCode::kIo:
      return "IOError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace causalbench
