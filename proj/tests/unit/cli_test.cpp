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

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "labgrade/cli/artifacts.hpp"
#include "labgrade/cli/commands.hpp"
#include "labgrade/core/errors.hpp"
#include "labgrade/evaluator/features.hpp"
#include "labgrade/evaluator/model_io.hpp"
#include "labgrade/labsvc/credentials.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace labgrade;
using namespace labgrade::cli;
using json = nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void put(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

std::filesystem::path corpus_file(const std::filesystem::path& dir, std::span<const DatasetRecord> records) {
  const auto p = dir / "input.jsonl";
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  write_corpus(out, records);
  return p;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIo;
}

CliConfig config_for(const std::filesystem::path& data, const std::filesystem::path& out) {
  CliConfig c;
  c.data = data;
  c.out = out;
  return c;
}

DatasetRecord rec(std::string id, std::string q, std::string a, Category c, std::optional<double> ai,
                  std::optional<double> fac) {
  return {std::move(id), std::move(q), std::move(a), c, ai, fac};
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "labgrade");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return rc;
}

}  // namespace

TEST_CASE("ingest counts categories and reports bad lines") {
  const auto dir = testing::scratch_dir("cli-ingest");
  put(dir / "three.jsonl",
      R"({"Id":"a","question":"q1","answer":"x","category":"Easy"})"
      "\n"
      R"({"Id":"b","question":"q2","answer":"y","category":"Hard","marksAI":50})"
      "\n"
      R"({"Id":"c","question":"q3","answer":"z","category":"Hard"})"
      "\n");
  auto s = cmd_ingest(config_for(dir / "three.jsonl", dir / "out3"));
  CHECK(s.ingested == 3);
  CHECK(s.per_category == std::map<std::string, std::size_t>{{"Easy", 1}, {"Hard", 2}, {"Medium", 0}});
  CHECK(s.rejected.empty());

  put(dir / "bad.jsonl",
      R"({"Id":"a","question":"q1","answer":"x","category":"Easy"})"
      "\n"
      R"({"Id":"b","question":"q2","answer":"y","category":"Impossible"})"
      "\n"
      R"({"Id":"c","question":"q3","answer":"z","category":"Medium"})"
      "\n");
  s = cmd_ingest(config_for(dir / "bad.jsonl", dir / "outbad"));
  CHECK(s.ingested == 2);
  REQUIRE(s.rejected.size() == 1);
  CHECK(s.rejected[0].line_number == 2);
  CHECK(s.rejected[0].code == ErrorCode::kBadCategory);
  const auto report = json::parse(slurp(dir / "outbad" / files::kIngestReport));
  CHECK(report.at("rejected")[0].at("line") == 2);
  CHECK(report.at("metadata").at("input_sha256") == labsvc::sha256_hex(slurp(dir / "bad.jsonl")));

  put(dir / "empty.jsonl", "\n\n");
  CHECK(code_of([&] { cmd_ingest(config_for(dir / "empty.jsonl", dir / "oute")); }) == ErrorCode::kEmptyCorpus);
}

TEST_CASE("ingest of the 50-record fixture matches a manual tally") {
  const auto dir = testing::scratch_dir("cli-ingest50");
  const auto path = testing::fixture_path("dataset_50.jsonl");
  std::map<std::string, std::size_t> tally = {{"Easy", 0}, {"Medium", 0}, {"Hard", 0}};
  std::ifstream in(path);
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    ++tally[json::parse(line).at("category").get<std::string>()];
    ++lines;
  }
  REQUIRE(lines == 50);
  const auto s = cmd_ingest(config_for(path, dir));
  CHECK(s.ingested == 50);
  CHECK(s.per_category == tally);

  // The canonical corpus reads back to the same records, and its metadata
  // names the input digest.
  const auto original = load_corpus(path);
  const auto canonical = load_corpus(dir / files::kCorpus);
  CHECK(canonical.records == original.records);
  const auto meta = json::parse(slurp(dir / (std::string(files::kCorpus) + ".meta.json")));
  CHECK(meta.at("metadata").at("seed") == 42);
  CHECK(meta.at("metadata").at("input_sha256") == labsvc::sha256_hex(slurp(path)));
  CHECK(meta.at("sha256") == labsvc::sha256_hex(slurp(dir / files::kCorpus)));
}

TEST_CASE("dedup command") {
  const auto dir = testing::scratch_dir("cli-dedup");
  {
    const std::vector<DatasetRecord> pair = {
        rec("a", "Explain gradient descent for linear regression", "x", Category::kEasy, {}, {}),
        rec("b", "Explain gradient descent for linear regression", "y", Category::kEasy, {}, {})};
    const auto r = cmd_dedup(config_for(corpus_file(dir, pair), dir / "pair"));
    CHECK(r.kept == std::vector<std::string>{"a"});
    REQUIRE(r.dropped.size() == 1);
    CHECK(r.dropped[0].duplicate_of == "a");
    CHECK(load_corpus(dir / "pair" / files::kDedupKept).records.size() == 1);
  }
  {
    const std::vector<DatasetRecord> distinct = {
        rec("a", "Train a random forest on iris", "x", Category::kEasy, {}, {}),
        rec("b", "Derive backpropagation for a sigmoid unit", "y", Category::kHard, {}, {}),
        rec("c", "Cluster customers with k-means", "z", Category::kMedium, {}, {})};
    CHECK(cmd_dedup(config_for(corpus_file(dir, distinct), dir / "distinct")).kept.size() == 3);
  }
  {
    // Planted clusters: each base question reappears with one word changed.
    const std::vector<std::string> bases = {
        "Implement logistic regression with L2 regularisation and report validation accuracy on the breast cancer data",
        "Build a convolutional network for digit recognition and plot the training loss per epoch",
        "Compare bagging and boosting ensembles on a noisy tabular regression benchmark using RMSE",
        "Use principal component analysis to compress face images and show reconstruction error",
        "Tune the number of neighbours for a k nearest neighbour classifier with cross validation"};
    std::vector<DatasetRecord> records;
    std::vector<std::pair<std::string, std::string>> items;
    for (int copy = 0; copy < 3; ++copy) {
      for (std::size_t b = 0; b < bases.size(); ++b) {
        const auto id = fmt::format("q{}-{}", b, copy);
        const auto text = copy == 0 ? bases[b] : bases[b] + " variant" + std::to_string(copy);
        records.push_back(rec(id, text, "a", Category::kMedium, {}, {}));
        items.emplace_back(id, text);
      }
    }
    oracle::DocFreq df;
    for (const auto& [id, text] : items) df.add(text);
    auto config = config_for(corpus_file(dir, records), dir / "planted");
    config.threshold = 0.8;
    const auto r = cmd_dedup(config);
    const auto expected = oracle::greedy_dedup(items, 0.8, df);
    CHECK(r.kept == expected.kept);
    REQUIRE(r.dropped.size() == expected.dropped.size());
    for (std::size_t i = 0; i < r.dropped.size(); ++i) {
      CHECK(r.dropped[i].id == expected.dropped[i].first);
      CHECK(r.dropped[i].duplicate_of == expected.dropped[i].second);
    }
    CHECK(r.kept.size() == 5);
    const auto manifest = json::parse(slurp(dir / "planted" / files::kDedupManifest));
    CHECK(manifest.at("dropped").size() == 10);
    CHECK(manifest.at("metadata").at("command") == "dedup");
  }
  auto bad = config_for(dir / "input.jsonl", dir / "bad");
  bad.threshold = 1.5;
  CHECK(code_of([&] { cmd_dedup(bad); }) == ErrorCode::kBadThreshold);
}

TEST_CASE("train: constant labels") {
  const auto dir = testing::scratch_dir("cli-const");
  std::mt19937_64 rng(3);
  std::vector<DatasetRecord> records;
  for (int i = 0; i < 20; ++i) {
    records.push_back(rec("c" + std::to_string(i), "Write a loop", synth::synthetic_code(rng), Category::kEasy, {}, 64.0));
  }
  auto config = config_for(corpus_file(dir, records), dir / "out");
  config.gbt.n_trees = 20;
  const auto r = cmd_train(config);
  REQUIRE(r.cv.has_value());
  for (double rmse : r.cv->fold_rmse) CHECK(rmse == 0.0);
  CHECK(r.cv->pooled_r2 == 1.0);
  const auto fv = evaluator::extract_features("print(1)", "q", "print(1)", Category::kHard, evaluator::feature_vectorizer());
  CHECK(evaluator::predict(r.model, fv) == 64.0);
}

TEST_CASE("train: too few rows") {
  const auto dir = testing::scratch_dir("cli-few");
  std::vector<DatasetRecord> records = {rec("a", "q", "x = 1", Category::kEasy, {}, 50.0),
                                        rec("b", "q", "y = 2", Category::kEasy, 70.0, std::nullopt)};
  auto config = config_for(corpus_file(dir, records), dir / "out");
  CHECK(code_of([&] { cmd_train(config); }) == ErrorCode::kTooFewRows);

  records[1].marks_faculty = 60.0;
  config.data = corpus_file(dir, records);
  const auto r = cmd_train(config);
  CHECK(r.labeled_rows == 2);
  CHECK_FALSE(r.cv.has_value());
  CHECK(json::parse(slurp(dir / "out" / files::kCvReport)).at("cv").at("status") == "skipped");

  config.folds = 1;
  CHECK(code_of([&] { cmd_train(config); }) == ErrorCode::kValidationFailed);
}

TEST_CASE("train: report equals a direct evaluator run, reruns are byte-identical") {
  const auto dir = testing::scratch_dir("cli-train");
  const auto records = synth::synthetic_corpus(120, 3.0, 42);
  auto config = config_for(corpus_file(dir, records), dir / "run1");
  config.gbt.n_trees = 60;
  config.gbt.max_depth = 4;
  config.gbt.learning_rate = 0.1;
  const auto r = cmd_train(config);

  // Features built directly from the records, without the command's helper.
  evaluator::FeatureMatrix x;
  x.cols = evaluator::kFeatureCount;
  std::vector<double> y;
  for (const auto& rec : records) {
    const auto fv =
        evaluator::extract_features(rec.answer, rec.question, rec.answer, rec.category, evaluator::feature_vectorizer());
    x.push_back(std::span<const double>(fv.values.data(), fv.values.size()));
    y.push_back(*rec.marks_faculty);
  }
  const auto cv = evaluator::cross_validate(x, y, config.gbt, 5, 42);
  REQUIRE(r.cv.has_value());
  CHECK(r.cv->fold_rmse == cv.fold_rmse);
  CHECK(r.cv->pooled_r2 == cv.pooled_r2);
  CHECK(evaluator::serialize_model(r.model) == evaluator::serialize_model(evaluator::train_gbt(x, y, config.gbt, 42)));

  // The stamped model file still loads as the same model.
  const auto loaded = evaluator::load_model(dir / "run1" / files::kModel);
  CHECK(evaluator::serialize_model(loaded) == evaluator::serialize_model(r.model));
  const auto model_json = json::parse(slurp(dir / "run1" / files::kModel));
  CHECK(model_json.at("metadata").at("seed") == 42);
  CHECK(model_json.at("metadata").at("input_sha256") == labsvc::sha256_hex(slurp(config.data)));

  const auto csv = slurp(dir / "run1" / files::kCvErrors);
  CHECK(csv.starts_with("# command: train\n# seed: 42\n"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4 + 1 + 120);

  config.out = dir / "run2";
  cmd_train(config);
  for (const char* f : {files::kModel, files::kCvReport, files::kCvErrors}) {
    CHECK(slurp(dir / "run1" / f) == slurp(dir / "run2" / f));
  }
  // A different seed is visible in the metadata and the model.
  config.out = dir / "run3";
  config.seed = 7;
  cmd_train(config);
  CHECK(slurp(dir / "run1" / files::kModel) != slurp(dir / "run3" / files::kModel));
}

TEST_CASE("agreement command") {
  const auto dir = testing::scratch_dir("cli-agree");
  {
    const std::vector<DatasetRecord> same = {rec("a", "q", "x", Category::kEasy, 10, 10),
                                             rec("b", "q", "x", Category::kEasy, 55, 55),
                                             rec("c", "q", "x", Category::kEasy, 90, 90)};
    const auto r = cmd_agreement(config_for(corpus_file(dir, same), dir / "same"));
    CHECK(r.pearson.value == 1.0);
    CHECK(r.spearman.value == 1.0);
    CHECK(r.cohen_kappa == 1.0);
  }
  {
    const std::vector<DatasetRecord> one = {rec("a", "q", "x", Category::kEasy, 10, 10),
                                            rec("b", "q", "x", Category::kEasy, 20, std::nullopt)};
    CHECK(code_of([&] { cmd_agreement(config_for(corpus_file(dir, one), dir / "one")); }) == ErrorCode::kTooFew);
  }
  const auto path = testing::fixture_path("dataset_50.jsonl");
  std::vector<double> ai, fac;
  std::ifstream in(path);
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const auto j = json::parse(line);
    ai.push_back(j.at("marksAI").get<double>());
    fac.push_back(j.at("marksFaculty").get<double>());
  }
  const auto r = cmd_agreement(config_for(path, dir / "fixture"));
  CHECK(r.n_pairs == 50);
  CHECK(r.pearson.value == doctest::Approx(oracle::pearson(ai, fac)).epsilon(1e-12));
  CHECK(r.spearman.value ==
        doctest::Approx(oracle::pearson(oracle::average_ranks(ai), oracle::average_ranks(fac))).epsilon(1e-12));
  // Kappa over five 20-point bands, straight from the definition.
  auto band = [](double m) { return std::min<int>(4, static_cast<int>(m / 20.0)); };
  double po = 0;
  std::array<double, 5> ca{}, cf{};
  for (std::size_t i = 0; i < ai.size(); ++i) {
    po += band(ai[i]) == band(fac[i]);
    ++ca[band(ai[i])];
    ++cf[band(fac[i])];
  }
  const double n = static_cast<double>(ai.size());
  double pe = 0;
  for (int b = 0; b < 5; ++b) pe += (ca[b] / n) * (cf[b] / n);
  po /= n;
  CHECK(r.cohen_kappa == doctest::Approx((po - pe) / (1 - pe)).epsilon(1e-12));
  const auto csv = slurp(dir / "fixture" / files::kAgreementPairs);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4 + 1 + 50);
}

TEST_CASE("qa-sim command delegates to the similarity report") {
  const auto dir = testing::scratch_dir("cli-qasim");
  const auto path = testing::fixture_path("dataset_50.jsonl");
  const auto r = cmd_qa_sim(config_for(path, dir));
  const auto direct = textsim::qa_similarity_report(load_corpus(path).records);
  CHECK(r.pair_count == 50);
  CHECK(r.mean == direct.mean);
  CHECK(r.histogram == direct.histogram);
  const auto j = json::parse(slurp(dir / files::kQaSimilarity));
  CHECK(j.at("histogram").size() == textsim::kSimilarityBins);
  CHECK(j.at("pair_count") == 50);
}

TEST_CASE("generate is byte-identical for a fixed seed") {
  const auto dir = testing::scratch_dir("cli-gen");
  CliConfig c;
  c.out = dir / "a";
  c.keywords = {"decision tree", "gradient boosting"};
  c.count = 12;
  const auto q = cmd_generate(c);
  CHECK(q.size() == 12);
  c.out = dir / "b";
  cmd_generate(c);
  CHECK(slurp(dir / "a" / files::kQuestions) == slurp(dir / "b" / files::kQuestions));
  CHECK(slurp(dir / "a" / "questions.jsonl.meta.json") == slurp(dir / "b" / "questions.jsonl.meta.json"));
}

TEST_CASE("command line: flags, environment and exit codes") {
  const auto dir = testing::scratch_dir("cli-run");
  const auto fixture = testing::fixture_path("dataset_50.jsonl").string();
  std::string text;
  CHECK(run_cli({"ingest", "--data", fixture, "--out", (dir / "a").string()}, &text) == 0);
  CHECK(text.find("ingested 50 records") != std::string::npos);

  ::setenv("LABGRADE_SEED", "1234", 1);
  ::setenv("LABGRADE_OUT", (dir / "env").string().c_str(), 1);
  const int rc = run_cli({"ingest", "--data", fixture});
  ::unsetenv("LABGRADE_SEED");
  ::unsetenv("LABGRADE_OUT");
  CHECK(rc == 0);
  CHECK(json::parse(slurp(dir / "env" / files::kIngestReport)).at("metadata").at("seed") == 1234);

  CHECK(run_cli({}) == 1);
  CHECK(run_cli({"bogus"}) == 1);
  CHECK(run_cli({"ingest", "--seed", "minus-one", "--data", fixture}) == 1);
  CHECK(run_cli({"ingest", "--data", (dir / "missing.jsonl").string(), "--out", (dir / "m").string()}, &text) == 2);
  CHECK(text.find("Io") != std::string::npos);
  CHECK(run_cli({"dedup", "--data", fixture, "--threshold", "0", "--out", (dir / "d").string()}) == 1);
  CHECK(run_cli({"generate", "--keywords", "svm", "--difficulty", "Extreme", "--out", (dir / "g").string()}) == 1);
  CHECK(run_cli({"serve", "--addr", "no-port", "--out", (dir / "s").string()}) == 1);
  CHECK(run_cli({"--help"}) == 0);

  CHECK(exit_code_for(ErrorCode::kIo) == 2);
  CHECK(exit_code_for(ErrorCode::kAddressInUse) == 2);
  CHECK(exit_code_for(ErrorCode::kValidationFailed) == 1);
  CHECK(exit_code_for(ErrorCode::kTooFewRows) == 1);
}

TEST_CASE("artifact helpers") {
  const auto dir = testing::scratch_dir("cli-artifacts");
  put(dir / "abc.txt", "abc");
  CHECK(file_sha256(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(code_of([&] { file_sha256(dir / "none"); }) == ErrorCode::kIo);
  // Key order does not change the hash.
  CHECK(config_hash(json::parse(R"({"a":1,"b":2})")) == config_hash(json::parse(R"({"b":2,"a":1})")));
  CHECK(config_hash(json{{"a", 1}}) != config_hash(json{{"a", 2}}));
  ArtifactMeta m{"x", 5, "h", ""};
  write_json_artifact(dir / "nested" / "o.json", m, {{"k", 1}});
  const auto j = json::parse(slurp(dir / "nested" / "o.json"));
  CHECK(j.at("metadata").at("input_sha256").is_null());
  CHECK(j.at("k") == 1);
  CHECK_FALSE(std::filesystem::exists(dir / "nested" / "o.json.tmp"));
  CHECK(stamp_model(R"({"a":1})", m) ==
        R"({"a":1,"metadata":{"command":"x","seed":5,"config_hash":"h","input_sha256":null}})"
        "\n");
}
