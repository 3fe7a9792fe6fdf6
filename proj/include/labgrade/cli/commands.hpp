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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "labgrade/analytics/agreement.hpp"
#include "labgrade/core/dataset.hpp"
#include "labgrade/evaluator/cross_validate.hpp"
#include "labgrade/evaluator/gbt.hpp"
#include "labgrade/genpipe/generator.hpp"
#include "labgrade/textsim/similarity.hpp"

namespace labgrade::cli {

struct CliConfig {
  std::filesystem::path data;
  std::filesystem::path out = "labgrade-out";
  std::uint64_t seed = 42;
  double threshold = textsim::kDefaultDedupThreshold;
  int folds = 5;
  evaluator::GbtConfig gbt;
  std::string addr = "127.0.0.1:8080";
  std::optional<std::filesystem::path> model;
  std::optional<std::filesystem::path> users;  // serve: accounts to create on start
  // generate
  std::vector<std::string> keywords;
  Difficulty difficulty = Difficulty::kMedium;
  int count = 10;
};

// Output names under --out.
namespace files {
inline constexpr const char* kCorpus = "corpus.jsonl";
inline constexpr const char* kIngestReport = "ingest_report.json";
inline constexpr const char* kDedupKept = "dedup_kept.jsonl";
inline constexpr const char* kDedupManifest = "dedup_manifest.json";
inline constexpr const char* kModel = "model.json";
inline constexpr const char* kCvReport = "cv_report.json";
inline constexpr const char* kCvErrors = "cv_errors.csv";
inline constexpr const char* kAgreement = "agreement.json";
inline constexpr const char* kAgreementPairs = "agreement_pairs.csv";
inline constexpr const char* kQaSimilarity = "qa_similarity.json";
inline constexpr const char* kQaScores = "qa_scores.csv";
inline constexpr const char* kQuestions = "questions.jsonl";
inline constexpr const char* kStateDir = "state";
}  // namespace files

struct IngestSummary {
  std::size_t ingested = 0;
  std::map<std::string, std::size_t> per_category;  // every category, zeros included
  std::vector<RejectedLine> rejected;
};

// Training role-mapping: the dataset answer stands in for both the student
// submission and the rubric; the category sets the difficulty.
struct TrainingSet {
  evaluator::FeatureMatrix x;
  std::vector<double> y;  // marksFaculty
  std::vector<std::string> ids;
  std::vector<std::string> topics;  // category names
};

// Rows without marksFaculty are skipped.
TrainingSet training_set(std::span<const DatasetRecord> corpus);

struct TrainResult {
  evaluator::GbtModel model;
  std::optional<evaluator::CvReport> cv;  // unset when too few rows to cross-validate
  std::size_t labeled_rows = 0;
};

IngestSummary cmd_ingest(const CliConfig& config);
textsim::DedupResult cmd_dedup(const CliConfig& config);
// Throws Error(kTooFewRows) below two labeled rows.
TrainResult cmd_train(const CliConfig& config);
// Throws Error(kTooFew) below two rows carrying both marks.
analytics::AgreementReport cmd_agreement(const CliConfig& config);
textsim::SimilarityReport cmd_qa_sim(const CliConfig& config);
std::vector<genpipe::GeneratedQuestion> cmd_generate(const CliConfig& config);
// Blocks until SIGTERM or SIGINT, then snapshots the service state.
void cmd_serve(const CliConfig& config, std::ostream& log);

// 0 success, 1 validation error, 2 I/O error.
int exit_code_for(ErrorCode code);

// Whole command line, environment included (LABGRADE_<FLAG>).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace labgrade::cli
