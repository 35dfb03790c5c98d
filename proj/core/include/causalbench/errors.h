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

#ifndef CAUSALBENCH_ERRORS_H_
#define CAUSALBENCH_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace causalbench {

enum class ErrorCode {
  kConfig,
  kUnknownRole,
  kDegenerate,
  kSingularDesign,
  kTooFewSamples,
  kEmptyArm,
  kNoMatches,
  kZeroGroupWeight,
  kZeroGroup,
  kSchemaMismatch,
  kNonFinite,
  kEmptyGroup,
  kLengthMismatch,
  kMissingPotentialOutcomes,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this type; `code()` lets callers
// (the sweep harness in particular) record a cell-level error and move on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace causalbench

#endif  // CAUSALBENCH_ERRORS_H_
