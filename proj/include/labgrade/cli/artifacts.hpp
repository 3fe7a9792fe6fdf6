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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace labgrade::cli {

// Provenance stamped into every output. No wall-clock fields, so reruns with
// the same inputs and seed produce identical bytes.
struct ArtifactMeta {
  std::string command;
  std::uint64_t seed = 42;
  std::string config_hash;   // sha256 of the canonical config JSON
  std::string input_sha256;  // of the --data file; empty when there is none
};

nlohmann::ordered_json to_json(const ArtifactMeta& m);

// Throws Error(kIo) when the file cannot be read.
std::string file_sha256(const std::filesystem::path& path);
// Keys are sorted before hashing.
std::string config_hash(const nlohmann::json& config);

// Writes through a sibling temp file and a rename; throws Error(kIo).
void write_file(const std::filesystem::path& path, std::string_view bytes);

// {"metadata": {...}, <body keys>...}
void write_json_artifact(const std::filesystem::path& path, const ArtifactMeta& meta, nlohmann::ordered_json body);
// "# key: value" header lines, then the CSV text.
void write_csv_artifact(const std::filesystem::path& path, const ArtifactMeta& meta, std::string_view csv);
// JSONL has no room for a header, so the block goes to "<path>.meta.json".
void write_jsonl_artifact(const std::filesystem::path& path, const ArtifactMeta& meta, std::string_view jsonl);
// Splices "metadata" into the model object as its last key; the model loader
// ignores it.
std::string stamp_model(std::string_view model_json, const ArtifactMeta& meta);

}  // namespace labgrade::cli
