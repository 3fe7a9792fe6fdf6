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

#include "labgrade/cli/commands.hpp"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "labgrade/analytics/error_report.hpp"
#include "labgrade/analytics/export.hpp"
#include "labgrade/cli/artifacts.hpp"
#include "labgrade/core/errors.hpp"
#include "labgrade/evaluator/features.hpp"
#include "labgrade/evaluator/model_io.hpp"
#include "labgrade/labsvc/api.hpp"
#include "labgrade/labsvc/http_server.hpp"
#include "labgrade/labsvc/service.hpp"

namespace labgrade::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::size_t kWorstCases = 10;

ArtifactMeta meta_for(const std::string& command, const CliConfig& config, json params) {
  params["command"] = command;
  ArtifactMeta m;
  m.command = command;
  m.seed = config.seed;
  m.config_hash = config_hash(params);
  if (!config.data.empty()) m.input_sha256 = file_sha256(config.data);
  return m;
}

json gbt_params(const evaluator::GbtConfig& g) {
  return {{"n_trees", g.n_trees},     {"max_depth", g.max_depth}, {"learning_rate", g.learning_rate},
          {"subsample", g.subsample}, {"colsample", g.colsample}, {"min_rows_per_leaf", g.min_rows_per_leaf}};
}

Corpus read_input(const CliConfig& config) {
  if (config.data.empty()) throw Error(ErrorCode::kValidationFailed, "--data is required", {"data"});
  return load_corpus(config.data);
}

std::string corpus_text(std::span<const DatasetRecord> records) {
  std::ostringstream out;
  write_corpus(out, records);
  return out.str();
}

std::pair<std::string, int> split_addr(const std::string& addr) {
  const auto colon = addr.rfind(':');
  int port = -1;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      port = std::stoi(addr.substr(colon + 1), &used);
      if (used != addr.size() - colon - 1) port = -1;
    } catch (const std::exception&) {
      port = -1;
    }
  }
  if (colon == 0 || port < 0 || port > 65535) {
    throw Error(ErrorCode::kValidationFailed, fmt::format("--addr must be host:port, got '{}'", addr), {"addr"});
  }
  return {addr.substr(0, colon), port};
}

void bootstrap_users(labsvc::LabService& svc, const std::filesystem::path& path, std::ostream& log) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read {}", path.string()), {path.string()});
  json users;
  try {
    users = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedJson, fmt::format("{}: {}", path.string(), e.what()), {path.string()});
  }
  if (!users.is_array()) throw Error(ErrorCode::kMalformedJson, "users file must hold a JSON array", {path.string()});
  const auto existing = svc.state().users;
  std::size_t created = 0;
  for (const auto& u : users) {
    try {
      const auto id = u.at("user_id").get<std::string>();
      if (existing.contains(id)) continue;
      const auto role = parse_role(u.at("role").get<std::string>());
      if (!role) throw Error(ErrorCode::kValidationFailed, fmt::format("user {}: bad role", id), {"role"});
      svc.register_user(id, *role, u.at("password").get<std::string>(), u.value("display_name", id),
                        u.value("section", ""));
      if (u.value("disabled", false)) svc.set_user_disabled(id, true);
      ++created;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMissingField, fmt::format("users file: {}", e.what()), {path.string()});
    }
  }
  log << fmt::format("bootstrapped {} of {} users\n", created, users.size());
}

}  // namespace

TrainingSet training_set(std::span<const DatasetRecord> corpus) {
  TrainingSet t;
  t.x.cols = evaluator::kFeatureCount;
  const auto& vectorizer = evaluator::feature_vectorizer();
  for (const auto& r : corpus) {
    if (!r.marks_faculty) continue;
    const auto fv = evaluator::extract_features(r.answer, r.question, r.answer, r.category, vectorizer);
    t.x.push_back(std::span<const double>(fv.values.data(), fv.values.size()));
    t.y.push_back(*r.marks_faculty);
    t.ids.push_back(r.id);
    t.topics.emplace_back(to_string(r.category));
  }
  return t;
}

IngestSummary cmd_ingest(const CliConfig& config) {
  const auto corpus = read_input(config);
  IngestSummary s;
  s.ingested = corpus.records.size();
  s.rejected = corpus.rejected;
  for (auto c : {Category::kEasy, Category::kMedium, Category::kHard}) s.per_category[std::string(to_string(c))] = 0;
  for (const auto& r : corpus.records) ++s.per_category[std::string(to_string(r.category))];
  if (s.ingested == 0) throw Error(ErrorCode::kEmptyCorpus, "no valid records", {config.data.string()});

  const auto meta = meta_for("ingest", config, json::object());
  write_jsonl_artifact(config.out / files::kCorpus, meta, corpus_text(corpus.records));
  ordered_json rejected = ordered_json::array();
  for (const auto& r : s.rejected) {
    rejected.push_back({{"line", r.line_number}, {"code", error_code_name(r.code)}, {"message", r.message}});
  }
  write_json_artifact(config.out / files::kIngestReport, meta,
                      {{"ingested", s.ingested}, {"categories", s.per_category}, {"rejected", std::move(rejected)}});
  return s;
}

textsim::DedupResult cmd_dedup(const CliConfig& config) {
  const auto corpus = read_input(config);
  std::vector<textsim::QuestionItem> items;
  items.reserve(corpus.records.size());
  for (const auto& r : corpus.records) items.push_back({r.id, r.question});
  auto result = textsim::dedup_filter(items, config.threshold);

  const auto meta = meta_for("dedup", config, {{"threshold", config.threshold}});
  std::set<std::string> kept(result.kept.begin(), result.kept.end());
  std::vector<DatasetRecord> kept_records;
  for (const auto& r : corpus.records) {
    if (kept.contains(r.id)) kept_records.push_back(r);
  }
  write_jsonl_artifact(config.out / files::kDedupKept, meta, corpus_text(kept_records));
  ordered_json dropped = ordered_json::array();
  for (const auto& d : result.dropped) {
    dropped.push_back({{"id", d.id}, {"duplicate_of", d.duplicate_of}, {"similarity", d.similarity}});
  }
  write_json_artifact(config.out / files::kDedupManifest, meta,
                      {{"threshold", config.threshold},
                       {"input", corpus.records.size()},
                       {"kept", result.kept.size()},
                       {"dropped", std::move(dropped)}});
  return result;
}

TrainResult cmd_train(const CliConfig& config) {
  evaluator::validate_config(config.gbt);
  if (config.folds < 2) throw Error(ErrorCode::kValidationFailed, "--folds must be at least 2", {"folds"});
  const auto corpus = read_input(config);
  const auto t = training_set(corpus.records);
  if (t.y.size() < 2) {
    throw Error(ErrorCode::kTooFewRows, fmt::format("need at least 2 rows with marksFaculty, got {}", t.y.size()));
  }

  TrainResult result;
  result.labeled_rows = t.y.size();
  // Small corpora shrink k; below three rows no split leaves two rows to train on.
  const int n = static_cast<int>(t.y.size());
  const int k = std::min(config.folds, n);
  if (n - (n + k - 1) / k >= 2) result.cv = evaluator::cross_validate(t.x, t.y, config.gbt, k, config.seed);
  result.model = evaluator::train_gbt(t.x, t.y, config.gbt, config.seed);

  const auto meta = meta_for("train", config, {{"seed", config.seed}, {"folds", config.folds}, {"gbt", gbt_params(config.gbt)}});
  write_file(config.out / files::kModel, stamp_model(evaluator::serialize_model(result.model), meta));

  ordered_json body = {{"labeled_rows", result.labeled_rows}, {"config", gbt_params(config.gbt)}};
  std::vector<analytics::ErrorRow> rows;
  if (result.cv) {
    const auto& cv = *result.cv;
    body["cv"] = {{"folds", cv.folds},           {"seed", cv.seed},
                  {"fold_rmse", cv.fold_rmse},   {"mean_rmse", cv.mean_rmse},
                  {"pooled_rmse", cv.pooled_rmse}, {"pooled_r2", cv.pooled_r2}};
    for (const auto& r : cv.rows) rows.push_back({t.ids[r.row], r.actual, r.predicted, t.topics[r.row]});
    body["errors"] = analytics::to_json(analytics::error_report(rows, kWorstCases));
  } else {
    body["cv"] = {{"status", "skipped"}, {"reason", fmt::format("{} labeled rows", n)}};
  }
  write_json_artifact(config.out / files::kCvReport, meta, std::move(body));
  write_csv_artifact(config.out / files::kCvErrors, meta, analytics::error_rows_csv(rows));
  return result;
}

analytics::AgreementReport cmd_agreement(const CliConfig& config) {
  const auto corpus = read_input(config);
  std::vector<std::pair<double, double>> pairs;
  for (const auto& r : corpus.records) {
    if (r.marks_ai && r.marks_faculty) pairs.emplace_back(*r.marks_ai, *r.marks_faculty);
  }
  auto report = analytics::agreement_report(pairs);
  const auto meta = meta_for("agreement", config, json::object());
  write_json_artifact(config.out / files::kAgreement, meta, {{"agreement", analytics::to_json(report)}});
  write_csv_artifact(config.out / files::kAgreementPairs, meta, analytics::scatter_csv(pairs));
  return report;
}

textsim::SimilarityReport cmd_qa_sim(const CliConfig& config) {
  const auto corpus = read_input(config);
  const auto vectorizer = textsim::corpus_vectorizer(corpus.records);
  const auto report = textsim::qa_similarity_report(corpus.records, vectorizer);
  const auto scores = textsim::qa_similarity_scores(corpus.records, vectorizer);

  const auto meta = meta_for("qa-sim", config, json::object());
  ordered_json bins = ordered_json::array();
  for (std::size_t b = 0; b < textsim::kSimilarityBins; ++b) {
    bins.push_back({{"lo", static_cast<double>(b) / textsim::kSimilarityBins},
                    {"hi", static_cast<double>(b + 1) / textsim::kSimilarityBins},
                    {"count", report.histogram[b]}});
  }
  write_json_artifact(config.out / files::kQaSimilarity, meta,
                      {{"pair_count", report.pair_count},
                       {"mean", report.mean},
                       {"stddev", report.stddev},
                       {"histogram", std::move(bins)}});
  std::string csv = "id,similarity\n";
  for (const auto& s : scores) csv += fmt::format("{},{}\n", analytics::csv_field(s.id), analytics::format_number(s.similarity));
  write_csv_artifact(config.out / files::kQaScores, meta, csv);
  return report;
}

std::vector<genpipe::GeneratedQuestion> cmd_generate(const CliConfig& config) {
  genpipe::GenerationRequest req;
  req.topic_keywords = config.keywords;
  req.difficulty = config.difficulty;
  req.student_count = config.count;
  req.seed = config.seed;
  req.dedup_threshold = config.threshold;
  auto questions = genpipe::generate_batch(req, genpipe::default_question_vectorizer());

  auto params = json{{"keywords", config.keywords},
                     {"difficulty", to_string(config.difficulty)},
                     {"count", config.count},
                     {"threshold", config.threshold},
                     {"seed", config.seed}};
  auto generate_config = config;
  generate_config.data.clear();
  const auto meta = meta_for("generate", generate_config, std::move(params));
  std::string text;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const auto& q = questions[i];
    text += ordered_json{{"index", i + 1},
                         {"digest", genpipe::question_digest(q.question_text)},
                         {"question", q.question_text},
                         {"rubric_answer", q.rubric_answer},
                         {"difficulty", to_string(q.difficulty)},
                         {"keyword", q.provenance.keyword},
                         {"attempts", q.provenance.attempts},
                         {"attempt_index", q.provenance.attempt_index}}
                .dump();
    text += '\n';
  }
  write_jsonl_artifact(config.out / files::kQuestions, meta, text);
  return questions;
}

void cmd_serve(const CliConfig& config, std::ostream& log) {
  const auto [host, port] = split_addr(config.addr);

  labsvc::ServiceConfig sc;
  sc.data_dir = config.out / files::kStateDir;
  std::filesystem::create_directories(*sc.data_dir);
  if (config.model && std::filesystem::exists(*config.model)) {
    sc.model = std::make_shared<const evaluator::GbtModel>(evaluator::load_model(*config.model));
  } else {
    log << fmt::format("warning: model {} not found; grading is disabled\n",
                       config.model ? config.model->string() : "(none)");
  }
  labsvc::LabService svc(sc);
  if (config.users) bootstrap_users(svc, *config.users, log);

  labsvc::ApiRouter router(svc);
  labsvc::HttpServer server(router);

  // Block the shutdown signals before any server thread exists so they all
  // inherit the mask and only the waiter below sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGTERM);
  sigaddset(&signals, SIGINT);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  int bound = 0;
  try {
    bound = server.bind(host, port);
  } catch (...) {
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    throw;
  }
  log << fmt::format("listening on {}:{} (state {}, last_seq {})\n", host, bound, sc.data_dir->string(), svc.last_seq())
      << std::flush;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  // listen() can also return on its own; wake the waiter so it can exit.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);

  svc.write_snapshot();
  log << fmt::format("stopped at seq {}\n", svc.last_seq());
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kAddressInUse:
    case ErrorCode::kBackendUnavailable:
      return 2;
    default:
      return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig config;
  std::string data, out_dir = config.out.string(), model, users, difficulty = "Medium";

  CLI::App app{"Lab assessment toolkit: dataset ingestion, training, reports and the lab service."};
  app.require_subcommand(1);
  const auto flag = [&app](const std::string& name, auto& target, const std::string& help) {
    auto* opt = app.add_option("--" + name, target, help);
    std::string env = "LABGRADE_" + name;
    std::transform(env.begin(), env.end(), env.begin(), [](unsigned char c) { return c == '-' ? '_' : std::toupper(c); });
    opt->envname(env);
    return opt;
  };
  flag("data", data, "input corpus (JSONL)");
  flag("out", out_dir, "output directory")->capture_default_str();
  flag("seed", config.seed, "random seed")->capture_default_str();
  flag("threshold", config.threshold, "near-duplicate cosine threshold")->capture_default_str();
  flag("folds", config.folds, "cross-validation folds")->capture_default_str();
  flag("trees", config.gbt.n_trees, "boosting rounds")->capture_default_str();
  flag("depth", config.gbt.max_depth, "maximum tree depth")->capture_default_str();
  flag("lr", config.gbt.learning_rate, "learning rate")->capture_default_str();
  flag("subsample", config.gbt.subsample, "row sample fraction per tree")->capture_default_str();
  flag("colsample", config.gbt.colsample, "feature sample fraction per tree")->capture_default_str();
  flag("addr", config.addr, "serve address host:port")->capture_default_str();
  flag("model", model, "model file for serve");
  flag("users", users, "JSON array of accounts to create when serving");
  flag("keywords", config.keywords, "topic keywords for generate")->delimiter(',');
  flag("difficulty", difficulty, "Easy, Medium or Hard for generate")->capture_default_str();
  flag("count", config.count, "questions to generate")->capture_default_str();
  app.fallthrough();

  auto* ingest = app.add_subcommand("ingest", "validate a JSONL corpus and write it in canonical form");
  auto* dedup = app.add_subcommand("dedup", "drop near-duplicate questions");
  auto* train = app.add_subcommand("train", "cross-validate and train the grading model");
  auto* agreement = app.add_subcommand("agreement", "AI vs faculty mark agreement");
  auto* qa_sim = app.add_subcommand("qa-sim", "question/answer similarity distribution");
  auto* generate = app.add_subcommand("generate", "generate a batch of unique questions");
  auto* serve = app.add_subcommand("serve", "run the lab service over HTTP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  config.data = data;
  config.out = out_dir;
  if (!model.empty()) config.model = model;
  if (!users.empty()) config.users = users;

  try {
    const auto cat = parse_category(difficulty);
    if (!cat) throw Error(ErrorCode::kValidationFailed, fmt::format("unknown difficulty '{}'", difficulty), {"difficulty"});
    config.difficulty = *cat;

    if (ingest->parsed()) {
      const auto s = cmd_ingest(config);
      out << fmt::format("ingested {} records, rejected {}\n", s.ingested, s.rejected.size());
      for (const auto& [c, n] : s.per_category) out << fmt::format("  {:<7} {}\n", c, n);
      for (const auto& r : s.rejected) {
        err << fmt::format("line {}: {} {}\n", r.line_number, error_code_name(r.code), r.message);
      }
    } else if (dedup->parsed()) {
      const auto r = cmd_dedup(config);
      out << fmt::format("kept {}, dropped {} at threshold {}\n", r.kept.size(), r.dropped.size(), config.threshold);
    } else if (train->parsed()) {
      const auto r = cmd_train(config);
      if (r.cv) {
        out << fmt::format("{} rows, {}-fold RMSE {:.4f} (pooled {:.4f}), R2 {:.4f}\n", r.labeled_rows, r.cv->folds,
                           r.cv->mean_rmse, r.cv->pooled_rmse, r.cv->pooled_r2);
      } else {
        out << fmt::format("{} rows, too few to cross-validate\n", r.labeled_rows);
      }
      out << fmt::format("model written to {}\n", (config.out / files::kModel).string());
    } else if (agreement->parsed()) {
      const auto r = cmd_agreement(config);
      out << fmt::format("pairs {}  pearson {:.4f}  spearman {:.4f}  kappa {:.4f}\n", r.n_pairs, r.pearson.value,
                         r.spearman.value, r.cohen_kappa);
    } else if (qa_sim->parsed()) {
      const auto r = cmd_qa_sim(config);
      out << fmt::format("pairs {}  mean {:.4f}  sd {:.4f}\n", r.pair_count, r.mean, r.stddev);
    } else if (generate->parsed()) {
      const auto q = cmd_generate(config);
      out << fmt::format("generated {} questions\n", q.size());
    } else if (serve->parsed()) {
      cmd_serve(config, err);
    }
  } catch (const Error& e) {
    err << fmt::format("error: {}: {}\n", error_code_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << fmt::format("error: Io: {}\n", e.what());
    return 2;
  }
  return 0;
}

}  // namespace labgrade::cli
