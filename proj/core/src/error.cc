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

#include "rdrsa/error.h"

#include <algorithm>
#include <utility>

namespace rdrsa {
namespace {

std::string JoinIssues(const std::vector<ValidationIssue>& issues) {
  std::string out = "invalid reference game:";
  for (const auto& issue : issues) {
    out += "\n  ";
    out += ErrorCodeName(issue.code);
    out += ": ";
    out += issue.message;
  }
  return out;
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyMeaningRow: return "EmptyMeaningRow";
    case ErrorCode::kEmptyUtteranceColumn: return "EmptyUtteranceColumn";
    case ErrorCode::kBadPrior: return "BadPrior";
    case ErrorCode::kNegativeCost: return "NegativeCost";
    case ErrorCode::kOutOfRangeLexicon: return "OutOfRangeLexicon";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kLabelMismatch: return "LabelMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMeaningUnreachable: return "MeaningUnreachable";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kEmptyColumn: return "EmptyColumn";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kBoundViolation: return "BoundViolation";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

GameValidationError::GameValidationError(std::vector<ValidationIssue> issues)
    : Error(issues.empty() ? ErrorCode::kInternal : issues.front().code,
            JoinIssues(issues)),
      issues_(std::move(issues)) {}

bool GameValidationError::Has(ErrorCode code) const {
  return std::any_of(issues_.begin(), issues_.end(),
                     [code](const ValidationIssue& i) { return i.code == code; });
}

}  // namespace rdrsa
