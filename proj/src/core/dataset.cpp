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

#include "labgrade/core/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

namespace labgrade {
namespace {

using nlohmann::json;

std::string required_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    throw Error(ErrorCode::kMissingField, fmt::format("missing field {}", key), {key});
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::kMalformedJson, fmt::format("field {} must be a string", key), {key});
  }
  return it->get<std::string>();
}

std::optional<double> optional_mark(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    throw Error(ErrorCode::kMalformedJson, fmt::format("field {} must be a number", key), {key});
  }
  const double v = it->get<double>();
  if (!mark_in_range(v)) {
    throw Error(ErrorCode::kOutOfRange, fmt::format("{} = {} outside [0,100]", key, it->dump()), {key});
  }
  return std::clamp(v, 0.0, 100.0);
}

void put_mark(nlohmann::ordered_json& obj, const char* key, const std::optional<double>& mark) {
  if (!mark) return;
  const double v = *mark;
  if (std::trunc(v) == v) {
    obj[key] = static_cast<std::int64_t>(v);
  } else {
    obj[key] = v;
  }
}

}  // namespace

bool operator==(const DatasetRecord& a, const DatasetRecord& b) {
  return a.id == b.id && a.question == b.question && a.answer == b.answer && a.category == b.category &&
         marks_equal(a.marks_ai, b.marks_ai) && marks_equal(a.marks_faculty, b.marks_faculty);
}

DatasetRecord parse_dataset_line(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line.begin(), line.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }
  if (!obj.is_object()) throw Error(ErrorCode::kMalformedJson, "line is not a JSON object");

  DatasetRecord rec;
  rec.id = required_string(obj, "Id");
  rec.question = required_string(obj, "question");
  rec.answer = required_string(obj, "answer");
  const std::string label = required_string(obj, "category");
  if (rec.id.empty()) throw Error(ErrorCode::kMissingField, "Id is empty", {"Id"});
  if (rec.question.empty()) throw Error(ErrorCode::kMissingField, "question is empty", {"question"});

  auto category = parse_category(label);
  if (!category) throw Error(ErrorCode::kBadCategory, fmt::format("unknown category '{}'", label), {"category"});
  rec.category = *category;
  rec.marks_ai = optional_mark(obj, "marksAI");
  rec.marks_faculty = optional_mark(obj, "marksFaculty");
  return rec;
}

std::string serialize_dataset_record(const DatasetRecord& record) {
  nlohmann::ordered_json obj;
  obj["Id"] = record.id;
  obj["question"] = record.question;
  obj["answer"] = record.answer;
  obj["category"] = to_string(record.category);
  put_mark(obj, "marksAI", record.marks_ai);
  put_mark(obj, "marksFaculty", record.marks_faculty);
  return obj.dump();
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      DatasetRecord rec = parse_dataset_line(line);
      if (!seen.insert(rec.id).second) {
        corpus.rejected.push_back(
            {line_number, ErrorCode::kDuplicateId, fmt::format("duplicate Id '{}'", rec.id)});
        continue;
      }
      corpus.records.push_back(std::move(rec));
    } catch (const Error& e) {
      corpus.rejected.push_back({line_number, e.code(), e.what()});
    }
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  return read_corpus(in);
}

void write_corpus(std::ostream& out, std::span<const DatasetRecord> records) {
  for (const auto& rec : records) out << serialize_dataset_record(rec) << '\n';
}

}  // namespace labgrade
