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

#include <span>
#include <string>
#include <vector>

#include "labgrade/core/types.hpp"
#include "labgrade/genpipe/generator.hpp"

namespace labgrade::genpipe {

struct AllocationResult {
  Lab lab;  // state moved to Allocated
  std::vector<Allocation> allocations;
};

// Generation request for a lab: keywords, difficulty and knobs from the lab
// and its policy. The seed mixes the policy seed with the lab id so two labs
// with equal settings still receive different question sets.
GenerationRequest request_for_lab(const Lab& lab, int student_count);

// One question per roster entry, zipped in roster order with allocation ids
// "<lab_id>-<n>" (n 1-based). Pure: nothing is persisted, so a failure leaves
// no partial allocations behind.
//
// Throws Error(kAlreadyAllocated) unless the lab is Draft,
// Error(kValidationFailed) for an empty or repeated roster, and propagates
// kDiversityExhausted / kBackendUnavailable from generation. `external` is
// required when the lab policy selects the External backend.
AllocationResult allocate_lab(const Lab& lab, std::span<const std::string> roster,
                              const textsim::Vectorizer& vectorizer, const QuestionSource* external,
                              Timestamp now);

}  // namespace labgrade::genpipe
