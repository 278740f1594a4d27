// Copyright 2026 The rdrsa Authors
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

#ifndef RDRSA_ERROR_H_
#define RDRSA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rdrsa {

enum class ErrorCode {
  // Game validation.
  kEmptyMeaningRow,
  kEmptyUtteranceColumn,
  kBadPrior,
  kNegativeCost,
  kOutOfRangeLexicon,
  kDuplicateLabel,
  kDimensionMismatch,
  // Parsing and I/O.
  kParse,
  kIo,
  kLabelMismatch,
  // Numerics.
  kInvalidArgument,
  kMeaningUnreachable,
  kNonFinite,
  kTooLarge,
  kEmptyColumn,
  kZeroVariance,
  kBoundViolation,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct ValidationIssue {
  ErrorCode code;
  std::string message;
};

// Thrown by ValidateGame. Lists every violated invariant, not just the first.
class GameValidationError : public Error {
 public:
  explicit GameValidationError(std::vector<ValidationIssue> issues);

  const std::vector<ValidationIssue>& issues() const { return issues_; }
  bool Has(ErrorCode code) const;

 private:
  std::vector<ValidationIssue> issues_;
};

}  // namespace rdrsa

#endif  // RDRSA_ERROR_H_
