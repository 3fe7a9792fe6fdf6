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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "labgrade/core/errors.hpp"
#include "labgrade/core/types.hpp"

namespace labgrade {

// One row of the question/answer corpus. JSONL field names are
// Id, question, answer, category, marksAI, marksFaculty.
struct DatasetRecord {
  std::string id;
  std::string question;
  std::string answer;
  Category category = Category::kEasy;
  std::optional<double> marks_ai;
  std::optional<double> marks_faculty;

  // Marks compare with kMarkTolerance.
  friend bool operator==(const DatasetRecord& a, const DatasetRecord& b);
};

// Parses and validates one JSON object. Unknown keys are ignored, absent or
// null marks become nullopt. Throws Error with kMalformedJson, kMissingField,
// kOutOfRange or kBadCategory; details()[0] names the field when relevant.
DatasetRecord parse_dataset_line(std::string_view line);

// Canonical, byte-stable JSON object (no trailing newline). Keys appear in the
// fixed order above; absent marks are omitted; integral marks print without a
// fractional part.
std::string serialize_dataset_record(const DatasetRecord& record);

struct RejectedLine {
  std::size_t line_number = 0;  // 1-based
  ErrorCode code = ErrorCode::kMalformedJson;
  std::string message;
};

struct Corpus {
  std::vector<DatasetRecord> records;
  std::vector<RejectedLine> rejected;
};

// Reads a JSONL stream. Blank lines are skipped; invalid lines and repeated ids
// land in `rejected` with their line numbers and never stop the scan.
Corpus read_corpus(std::istream& in);

// Throws Error(kIo) when the file cannot be opened.
Corpus load_corpus(const std::filesystem::path& path);

void write_corpus(std::ostream& out, std::span<const DatasetRecord> records);

}  // namespace labgrade
