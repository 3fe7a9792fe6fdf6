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

#include "labgrade/core/errors.hpp"

namespace labgrade {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedJson: return "MalformedJson";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kBadCategory: return "BadCategory";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kBadThreshold: return "BadThreshold";
    case ErrorCode::kDiversityExhausted: return "DiversityExhausted";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kAlreadyAllocated: return "AlreadyAllocated";
    case ErrorCode::kTooFewRows: return "TooFewRows";
    case ErrorCode::kNonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kInvalidWeights: return "InvalidWeights";
    case ErrorCode::kEmptyRubric: return "EmptyRubric";
    case ErrorCode::kMalformedModel: return "MalformedModel";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTooFew: return "TooFew";
    case ErrorCode::kEmpty: return "Empty";
    case ErrorCode::kMixedSubjects: return "MixedSubjects";
    case ErrorCode::kBadCredentials: return "BadCredentials";
    case ErrorCode::kAccountDisabled: return "AccountDisabled";
    case ErrorCode::kUnauthorized: return "Unauthorized";
    case ErrorCode::kForbidden: return "Forbidden";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kConflict: return "Conflict";
    case ErrorCode::kLabNotActive: return "LabNotActive";
    case ErrorCode::kDeadlinePassed: return "DeadlinePassed";
    case ErrorCode::kNotYourAllocation: return "NotYourAllocation";
    case ErrorCode::kSessionExpired: return "SessionExpired";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kAlreadyAnswered: return "AlreadyAnswered";
    case ErrorCode::kGradingUnavailable: return "GradingUnavailable";
    case ErrorCode::kAddressInUse: return "AddressInUse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string message, std::vector<std::string> details)
    : std::runtime_error(std::move(message)), code_(code), details_(std::move(details)) {}

}  // namespace labgrade
