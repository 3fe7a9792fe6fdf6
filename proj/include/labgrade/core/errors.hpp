// Copyright 2026 The labgrade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace labgrade {

enum class ErrorCode {
  // dataset ingestion
  kMalformedJson,
  kMissingField,
  kOutOfRange,
  kBadCategory,
  kDuplicateId,
  // text similarity
  kEmptyCorpus,
  kBadThreshold,
  // generation
  kDiversityExhausted,
  kBackendUnavailable,
  kAlreadyAllocated,
  // evaluator
  kTooFewRows,
  kNonFiniteFeature,
  kSchemaMismatch,
  kInvalidWeights,
  kEmptyRubric,
  kMalformedModel,
  // statistics
  kLengthMismatch,
  kTooFew,
  kEmpty,
  kMixedSubjects,
  // service
  kBadCredentials,
  kAccountDisabled,
  kUnauthorized,
  kForbidden,
  kValidationFailed,
  kNotFound,
  kConflict,
  kLabNotActive,
  kDeadlinePassed,
  kNotYourAllocation,
  kSessionExpired,
  kIndexOutOfRange,
  kAlreadyAnswered,
  kGradingUnavailable,
  kAddressInUse,
  kIo,
};

// Stable wire name, e.g. "OutOfRange".
std::string_view error_code_name(ErrorCode code);

// Every failure the library reports is an Error carrying a stable code and
// optional structured details (offending field names, counts, line numbers).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<std::string> details = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace labgrade
