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

// nlohmann::json mappings for the core value types. Timestamps travel as
// integer epoch seconds; enums as their canonical names.

#include <json.hpp>

#include "labgrade/core/errors.hpp"
#include "labgrade/core/types.hpp"

namespace labgrade {

void to_json(nlohmann::json& j, const GradeWeights& w);
void from_json(const nlohmann::json& j, GradeWeights& w);
void to_json(nlohmann::json& j, const LabPolicy& p);
void from_json(const nlohmann::json& j, LabPolicy& p);
void to_json(nlohmann::json& j, const Lab& lab);
void from_json(const nlohmann::json& j, Lab& lab);
void to_json(nlohmann::json& j, const Allocation& a);
void from_json(const nlohmann::json& j, Allocation& a);
void to_json(nlohmann::json& j, const Submission& s);
void from_json(const nlohmann::json& j, Submission& s);
void to_json(nlohmann::json& j, const User& u);
void from_json(const nlohmann::json& j, User& u);

}  // namespace labgrade
