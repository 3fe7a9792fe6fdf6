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

#include <filesystem>
#include <string>
#include <string_view>

#include "labgrade/evaluator/gbt.hpp"

namespace labgrade::evaluator {

// Self-describing JSON tree dump:
//   {"format":"labgrade-gbt","format_version":1,"feature_schema_version":1,
//    "feature_count":10,"feature_names":[...],"base_prediction":..,
//    "learning_rate":..,"n_trees":..,"max_depth":..,"subsample":..,
//    "colsample":..,"seed":..,"training_rows":..,
//    "trees":[[[feature,threshold,left,right,value],...],...]}
// Doubles use shortest round-trip formatting, so dump(load(s)) == s and two
// equal models serialise to identical bytes. feature_names is present only for
// the standard feature schema.
std::string serialize_model(const GbtModel& model);

// Throws Error(kMalformedModel) on bad structure, dangling child indices or a
// tree deeper than max_depth.
GbtModel parse_model(std::string_view text);

// File helpers; I/O failures throw Error(kIo).
void save_model(const GbtModel& model, const std::filesystem::path& path);
GbtModel load_model(const std::filesystem::path& path);

}  // namespace labgrade::evaluator
