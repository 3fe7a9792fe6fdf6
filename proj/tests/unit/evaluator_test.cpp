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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "labgrade/core/errors.hpp"
#include "labgrade/evaluator/cross_validate.hpp"
#include "labgrade/evaluator/features.hpp"
#include "labgrade/evaluator/gbt.hpp"
#include "labgrade/evaluator/grading.hpp"
#include "labgrade/evaluator/model_io.hpp"
#include "labgrade/evaluator/viva.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace labgrade;
using namespace labgrade::evaluator;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIo;
}

GbtConfig exact_config(int trees, int depth, double lr) {
  GbtConfig c;
  c.n_trees = trees;
  c.max_depth = depth;
  c.learning_rate = lr;
  c.subsample = 1.0;
  c.colsample = 1.0;
  return c;
}

struct SplitCost {
  double threshold;
  long double sse;
};

std::vector<SplitCost> oracle_split_candidates(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> values(x);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<SplitCost> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double t = (values[i] + values[i + 1]) / 2;
    long double sl = 0, sr = 0;
    int nl = 0, nr = 0;
    for (std::size_t r = 0; r < x.size(); ++r) (x[r] < t ? (sl += y[r], ++nl) : (sr += y[r], ++nr));
    if (nl < 2 || nr < 2) continue;
    long double sse = 0;
    for (std::size_t r = 0; r < x.size(); ++r) {
      const long double d = y[r] - (x[r] < t ? sl / nl : sr / nr);
      sse += d * d;
    }
    out.push_back({t, sse});
  }
  return out;
}

std::set<int> used_features(const GbtModel& m) {
  std::set<int> used;
  for (const auto& t : m.trees)
    for (const auto& n : t.nodes)
      if (!n.is_leaf()) used.insert(n.feature);
  return used;
}

long double training_mse(const GbtModel& m, const FeatureMatrix& x, const std::vector<double>& y, std::size_t trees) {
  long double total = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const long double d = predict_raw(m, x.row(i), trees) - y[i];
    total += d * d;
  }
  return total / y.size();
}

}  // namespace

// ---------------------------------------------------------------- features

TEST_CASE("extract_features: empty code") {
  const auto fv = extract_features("", "Implement k-NN", "import numpy", Difficulty::kMedium, feature_vectorizer());
  for (std::size_t i = 0; i + 1 < kFeatureCount; ++i) CHECK(fv.values[i] == 0.0);
  CHECK(fv[Feature::kDifficultyOrdinal] == 2.0);
  CHECK(fv.schema_version == kFeatureSchemaVersion);
}

TEST_CASE("extract_features: code equal to the rubric") {
  const std::string rubric = "from sklearn.neighbors import KNeighborsClassifier\nclf = KNeighborsClassifier(5)\n";
  const auto fv = extract_features(rubric, "Train k-NN", rubric, Difficulty::kHard, feature_vectorizer());
  CHECK(fv[Feature::kRubricSimilarity] == 1.0);
  CHECK(fv[Feature::kDifficultyOrdinal] == 3.0);
}

TEST_CASE("extract_features: hand-counted 12-line snippet") {
  const std::string code = testing::read_fixture("grade_snippet.py");
  const auto m = measure_code(code);
  CHECK(m.line_count == 12);
  CHECK(m.comment_lines == 2);
  CHECK(m.comment_ratio == doctest::Approx(2.0 / 12.0).epsilon(1e-15));
  CHECK(m.branch_keyword_count == 3);
  CHECK(m.max_nesting_depth == 2);
  CHECK(m.token_count == 55);
  // grade pred gold abs total len str print
  CHECK(m.unique_identifier_count == 8);
  CHECK(m.mean_line_length == doctest::Approx(244.0 / 12.0).epsilon(1e-15));

  const auto fv = extract_features(code, "q", "r", Difficulty::kEasy, feature_vectorizer());
  CHECK(fv[Feature::kLineCount] == 12.0);
  CHECK(fv[Feature::kBranchKeywordCount] == 3.0);
  CHECK(fv[Feature::kDifficultyOrdinal] == 1.0);
}

TEST_CASE("measure_code: comments, strings and brace languages") {
  const auto c = measure_code(
      "#include <vector>\n"
      "// counts things\n"
      "int f(int x) {\n"
      "  /* block\n"
      "     still block */\n"
      "  if (x > 0 || x < -3) { return 1; } else { return 0; }\n"
      "  const char* s = \"# not a comment // either\";\n"
      "}\n");
  CHECK(c.line_count == 8);
  CHECK(c.comment_lines == 3);
  CHECK(c.branch_keyword_count == 2);
  CHECK(c.max_nesting_depth == 2);

  const auto trailing = measure_code("x = 1  # set x\n\n\n");
  CHECK(trailing.line_count == 3);
  CHECK(trailing.comment_lines == 0);
  CHECK(trailing.mean_line_length == 14.0);
}

TEST_CASE("property: features are finite and bounded on synthetic code") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto code = synth::synthetic_code(rng);
    const auto fv = extract_features(code, "question about data", "def step_0(data, k): return k",
                                     Difficulty::kMedium, feature_vectorizer());
    for (double v : fv.values) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
    }
    CHECK(fv[Feature::kCommentRatio] <= 1.0);
    CHECK(fv[Feature::kQaSimilarity] <= 1.0);
    CHECK(fv[Feature::kRubricSimilarity] <= 1.0);
    CHECK(extract_features(code, "question about data", "def step_0(data, k): return k", Difficulty::kMedium,
                           feature_vectorizer()) == fv);
  }
}

// ---------------------------------------------------------------- GBT

TEST_CASE("train_gbt: two-cluster toy matches the exhaustive split oracle") {
  const std::vector<double> xs = {0.05, 0.1, 0.2, 0.3, 0.45, 0.55, 0.6, 0.75, 0.8, 0.95};
  std::vector<double> ys;
  FeatureMatrix x;
  for (double v : xs) {
    x.push_back(std::vector<double>{v});
    ys.push_back(v < 0.5 ? 20.0 : 80.0);
  }
  const auto expected = oracle::best_single_split(xs, ys);
  const auto model = train_gbt(x, ys, exact_config(1, 1, 1.0), 42);

  CHECK(model.base_prediction == 50.0);
  REQUIRE(model.trees.size() == 1);
  const auto& nodes = model.trees[0].nodes;
  REQUIRE(nodes.size() == 3);
  CHECK(nodes[0].feature == 0);
  CHECK(nodes[0].threshold == expected.threshold);
  CHECK(nodes[0].threshold > 0.45);
  CHECK(nodes[0].threshold <= 0.55);
  CHECK(nodes[static_cast<std::size_t>(nodes[0].left)].value == expected.left_mean - 50.0);
  CHECK(nodes[static_cast<std::size_t>(nodes[0].right)].value == expected.right_mean - 50.0);
  CHECK(nodes[1].value == -30.0);
  CHECK(nodes[2].value == 30.0);

  CHECK(predict(model, std::vector<double>{0.1}) == 20.0);
  CHECK(predict(model, std::vector<double>{0.9}) == 80.0);
}

TEST_CASE("train_gbt: oracle agreement on random single-feature data") {
  std::mt19937_64 rng(8);
  int splits_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + rng() % 30;
    std::vector<double> xs, ys;
    FeatureMatrix x;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(static_cast<double>(rng() % 20) / 4.0);
      ys.push_back(static_cast<double>(rng() % 101));
      x.push_back(std::vector<double>{xs.back()});
    }
    const auto candidates = oracle_split_candidates(xs, ys);
    const auto model = train_gbt(x, ys, exact_config(1, 1, 1.0), 1);
    const auto& nodes = model.trees[0].nodes;
    long double total_sse = 0, mean = 0;
    for (double y : ys) mean += y;
    mean /= n;
    for (double y : ys) total_sse += (y - mean) * (y - mean);
    if (candidates.empty()) {
      CHECK(nodes.size() == 1);
      continue;
    }
    long double best = INFINITY;
    for (const auto& c : candidates) best = std::min(best, c.sse);
    const long double tol = 1e-9L * (1 + total_sse);
    if (best >= total_sse - tol) continue;  // no real improvement available
    REQUIRE(nodes.size() == 3);
    ++splits_seen;
    // First threshold whose SSE is minimal up to rounding.
    double expected = 0;
    for (const auto& c : candidates) {
      if (c.sse <= best + tol) {
        expected = c.threshold;
        break;
      }
    }
    CHECK(nodes[0].threshold == expected);
  }
  CHECK(splits_seen > 150);
}

TEST_CASE("train_gbt: constant target predicts the constant") {
  std::mt19937_64 rng(3);
  FeatureMatrix x;
  std::vector<double> y;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> row(kFeatureCount);
    for (auto& v : row) v = synth::uniform01(rng) * 10;
    x.push_back(row);
    y.push_back(70.0);
  }
  const auto model = train_gbt(x, y, GbtConfig{}, 42);
  CHECK(model.base_prediction == 70.0);
  for (const auto& t : model.trees) {
    REQUIRE(t.nodes.size() == 1);
    CHECK(t.nodes[0].value == 0.0);
  }
  for (int i = 0; i < 20; ++i) {
    std::vector<double> row(kFeatureCount);
    for (auto& v : row) v = synth::uniform01(rng) * 100 - 50;
    CHECK(predict(model, row) == 70.0);
  }
}

TEST_CASE("train_gbt: deterministic serialization and depth bound") {
  const auto d = synth::linear_dataset(120, 3.0, 5);
  GbtConfig cfg;
  cfg.n_trees = 60;
  const auto a = train_gbt(d.x, d.y, cfg, 42);
  const auto b = train_gbt(d.x, d.y, cfg, 42);
  CHECK(serialize_model(a) == serialize_model(b));
  CHECK(serialize_model(a) != serialize_model(train_gbt(d.x, d.y, cfg, 43)));
  for (const auto& t : a.trees) CHECK(t.depth() <= cfg.max_depth);
  CHECK(a.trees.size() == 60);
  CHECK(a.n_trees == 60);
}

TEST_CASE("property: training MSE is non-increasing without subsampling") {
  const auto d = synth::linear_dataset(200, 3.0, 42);
  const auto model = train_gbt(d.x, d.y, exact_config(500, 6, 0.05), 42);
  long double prev = training_mse(model, d.x, d.y, 0);
  const long double start = prev;
  for (std::size_t t = 1; t <= model.trees.size(); ++t) {
    const long double mse = training_mse(model, d.x, d.y, t);
    CHECK(mse <= prev + 1e-12L * start);
    prev = mse;
  }
  CHECK(prev < start / 10);
}

TEST_CASE("property: features absent from every tree never move a prediction") {
  const auto d = synth::linear_dataset(150, 3.0, 11);
  GbtConfig cfg;
  cfg.n_trees = 40;
  cfg.max_depth = 2;
  const auto model = train_gbt(d.x, d.y, cfg, 42);
  const auto used = used_features(model);
  REQUIRE(used.size() < d.x.cols);
  std::mt19937_64 rng(1);
  for (std::size_t i = 0; i < 30; ++i) {
    std::vector<double> row(d.x.row(i).begin(), d.x.row(i).end());
    const double before = predict(model, row);
    for (std::size_t f = 0; f < row.size(); ++f) {
      if (used.contains(static_cast<int>(f))) continue;
      row[f] = synth::uniform01(rng) * 1e6 - 5e5;
    }
    CHECK(predict(model, row) == before);
  }
}

TEST_CASE("predict examples") {
  GbtModel empty;
  empty.base_prediction = 64.2;
  empty.n_trees = 0;
  FeatureVector fv;
  CHECK(predict(empty, fv) == 64.2);
  fv.values.fill(123.0);
  CHECK(predict(empty, fv) == 64.2);

  GbtModel high = empty;
  high.base_prediction = 104.3;
  CHECK(predict(high, fv) == 100.0);
  CHECK(predict_raw(high, fv.values) == 104.3);
  high.base_prediction = -2.0;
  CHECK(predict(high, fv) == 0.0);

  FeatureVector other;
  other.schema_version = 2;
  CHECK(code_of([&] { predict(empty, other); }) == ErrorCode::kSchemaMismatch);
  CHECK(code_of([&] { predict(empty, std::vector<double>{1.0}); }) == ErrorCode::kSchemaMismatch);
}

TEST_CASE("train_gbt errors") {
  FeatureMatrix one;
  one.push_back(std::vector<double>{1.0});
  const std::vector<double> y1 = {5.0};
  CHECK(code_of([&] { train_gbt(one, y1, GbtConfig{}, 1); }) == ErrorCode::kTooFewRows);

  FeatureMatrix two = one;
  two.push_back(std::vector<double>{std::nan("")});
  const std::vector<double> y2 = {5.0, 6.0};
  CHECK(code_of([&] { train_gbt(two, y2, GbtConfig{}, 1); }) == ErrorCode::kNonFiniteFeature);

  FeatureMatrix ok = one;
  ok.push_back(std::vector<double>{2.0});
  const std::vector<double> inf_target = {5.0, INFINITY};
  CHECK(code_of([&] { train_gbt(ok, inf_target, GbtConfig{}, 1); }) == ErrorCode::kNonFiniteFeature);
  CHECK(code_of([&] { train_gbt(ok, y1, GbtConfig{}, 1); }) == ErrorCode::kLengthMismatch);

  GbtConfig bad;
  bad.learning_rate = 0;
  bad.subsample = 1.5;
  try {
    validate_config(bad);
    FAIL("expected ValidationFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kValidationFailed);
    CHECK(e.details() == std::vector<std::string>{"learning_rate", "subsample"});
  }
}

TEST_CASE("model serialization round trip and malformed input") {
  const auto d = synth::linear_dataset(60, 3.0, 2);
  GbtConfig cfg;
  cfg.n_trees = 15;
  const auto model = train_gbt(d.x, d.y, cfg, 42);
  const auto text = serialize_model(model);
  const auto back = parse_model(text);
  CHECK(back == model);
  CHECK(serialize_model(back) == text);

  const auto dir = testing::scratch_dir("model");
  save_model(model, dir / "model.json");
  CHECK(load_model(dir / "model.json") == model);
  CHECK(code_of([&] { load_model(dir / "missing.json"); }) == ErrorCode::kIo);

  CHECK(code_of([] { parse_model("not json"); }) == ErrorCode::kMalformedModel);
  CHECK(code_of([] { parse_model(R"({"format":"other"})"); }) == ErrorCode::kMalformedModel);
  auto j = nlohmann::json::parse(text);
  j["trees"][0][0][2] = 999;
  CHECK(code_of([&] { parse_model(j.dump()); }) == ErrorCode::kMalformedModel);
  j = nlohmann::json::parse(text);
  j["max_depth"] = 0;
  CHECK(code_of([&] { parse_model(j.dump()); }) == ErrorCode::kMalformedModel);

  GbtModel standard;
  standard.n_trees = 0;
  CHECK(serialize_model(standard).find("\"feature_names\":[\"line_count\"") != std::string::npos);
}

// ---------------------------------------------------------------- CV

TEST_CASE("cross_validate: fold accounting") {
  FeatureMatrix x;
  std::vector<double> y;
  for (int i = 0; i < 4; ++i) {
    x.push_back(std::vector<double>{static_cast<double>(i)});
    y.push_back(10.0 * i);
  }
  const auto r = cross_validate(x, y, exact_config(5, 1, 0.5), 2, 42);
  REQUIRE(r.rows.size() == 4);
  std::vector<int> per_fold(2, 0);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r.rows[i].row == i);
    CHECK(r.rows[i].actual == y[i]);
    CHECK(r.rows[i].error == r.rows[i].predicted - r.rows[i].actual);
    ++per_fold[static_cast<std::size_t>(r.rows[i].fold)];
  }
  CHECK(per_fold == std::vector<int>{2, 2});
  CHECK(r.fold_rmse.size() == 2);
}

TEST_CASE("property: every row predicted exactly once across fold sizes") {
  for (std::size_t n : {5u, 7u, 13u, 30u}) {
    for (int k : {2, 3, 5}) {
      if (n < static_cast<std::size_t>(k) || n - (n + k - 1) / k < 2) continue;
      const auto d = synth::linear_dataset(n, 1.0, n * 31 + k);
      const auto r = cross_validate(d.x, d.y, exact_config(3, 2, 0.3), k, 7);
      CHECK(r.rows.size() == n);
      std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
      for (const auto& row : r.rows) ++sizes[static_cast<std::size_t>(row.fold)];
      for (int f = 0; f < k; ++f) {
        const std::size_t expected = n / k + (static_cast<std::size_t>(f) < n % k ? 1 : 0);
        CHECK(sizes[static_cast<std::size_t>(f)] == expected);
      }
    }
  }
}

TEST_CASE("cross_validate: exact linear target is learned") {
  // target = 10 + 80 * x0 with two distractor columns. Bounds locked from a
  // reference run (mean RMSE 0.259, pooled R^2 0.99987) with headroom.
  std::mt19937_64 rng(42);
  FeatureMatrix x;
  std::vector<double> y;
  for (int i = 0; i < 300; ++i) {
    std::vector<double> row(3);
    for (auto& v : row) v = synth::uniform01(rng);
    y.push_back(10 + 80 * row[0]);
    x.push_back(row);
  }
  const auto r = cross_validate(x, y, exact_config(300, 6, 0.1), 5, 42);
  CHECK(r.pooled_r2 >= 0.999);
  CHECK(r.mean_rmse <= 0.5);
  CHECK(r.pooled_rmse <= 0.5);
}

TEST_CASE("cross_validate: pure noise has no explanatory power") {
  std::mt19937_64 rng(42);
  FeatureMatrix x;
  std::vector<double> y;
  for (int i = 0; i < 300; ++i) {
    std::vector<double> row(4);
    for (auto& v : row) v = synth::uniform01(rng);
    x.push_back(row);
    y.push_back(std::clamp(50 + 10 * synth::gaussian(rng), 0.0, 100.0));
  }
  GbtConfig cfg;
  cfg.n_trees = 100;
  const auto r = cross_validate(x, y, cfg, 5, 42);
  CHECK(r.pooled_r2 <= 0.1);
}

TEST_CASE("cross_validate: constant labels give zero error") {
  const auto d = synth::linear_dataset(20, 0.0, 1);
  const std::vector<double> y(20, 65.0);
  GbtConfig cfg;
  cfg.n_trees = 10;
  const auto r = cross_validate(d.x, y, cfg, 5, 42);
  for (double f : r.fold_rmse) CHECK(f == 0.0);
  CHECK(r.pooled_r2 == 1.0);
}

TEST_CASE("cross_validate errors") {
  const auto d = synth::linear_dataset(4, 1.0, 1);
  CHECK(code_of([&] { cross_validate(d.x, d.y, GbtConfig{}, 1, 1); }) == ErrorCode::kTooFewRows);
  CHECK(code_of([&] { cross_validate(d.x, d.y, GbtConfig{}, 5, 1); }) == ErrorCode::kTooFewRows);
  const auto three = synth::linear_dataset(3, 1.0, 1);
  CHECK(code_of([&] { cross_validate(three.x, three.y, GbtConfig{}, 2, 1); }) == ErrorCode::kTooFewRows);
}

// ---------------------------------------------------------------- grading

TEST_CASE("weighted_final examples and permutation invariance") {
  const double eighty[] = {80, 80, 80};
  const double w[] = {0.6, 0.2, 0.2};
  CHECK(weighted_final(eighty, w) == doctest::Approx(80.0).epsilon(1e-15));

  const double s[] = {73.25, 41.5, 99.0};
  const double only_first[] = {1, 0, 0};
  CHECK(weighted_final(s, only_first) == 73.25);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> scores(3), weights(3);
    double total = 0;
    for (auto& x : scores) x = synth::uniform01(rng) * 100;
    for (auto& x : weights) total += (x = synth::uniform01(rng));
    for (auto& x : weights) x /= total;
    const double base = weighted_final(scores, weights);
    std::vector<std::size_t> perm = {0, 1, 2};
    while (std::next_permutation(perm.begin(), perm.end())) {
      std::vector<double> ps, pw;
      for (auto i : perm) {
        ps.push_back(scores[i]);
        pw.push_back(weights[i]);
      }
      const double permuted = weighted_final(ps, pw);
      CHECK(std::memcmp(&permuted, &base, sizeof(double)) == 0);
    }
  }
}

TEST_CASE("piecewise maps") {
  const PiecewiseMap m{{{0, 10}, {10, 30}, {20, 0}}};
  CHECK(m(-5) == 10);
  CHECK(m(0) == 10);
  CHECK(m(5) == 20);
  CHECK(m(15) == 15);
  CHECK(m(99) == 0);
  CHECK_NOTHROW(validate_grading_config(default_grading_config()));
  GradingConfig bad = default_grading_config();
  bad.nesting_depth.knots = {{1, 0}, {0, 1}};
  CHECK(code_of([&] { validate_grading_config(bad); }) == ErrorCode::kValidationFailed);

  nlohmann::json j = default_grading_config();
  CHECK(j.get<GradingConfig>() == default_grading_config());
}

TEST_CASE("grade_submission: fixture arithmetic") {
  GbtModel model;
  model.base_prediction = 64.2;
  model.n_trees = 0;
  Submission sub;
  sub.code_text = testing::read_fixture("grade_snippet.py");
  Allocation alloc;
  alloc.question_text = "Write a grading helper";
  alloc.rubric_answer = "def grade(pred, gold): return 100 if pred == gold else 0";

  const auto g = grade_submission(sub, alloc, Difficulty::kEasy, model, GradeWeights{});
  // Hand arithmetic over the default maps: comment ratio 1/6 sits between
  // knots (0.1, 80) and (0.25, 100); mean line length 20.33 is on the
  // (20, 100)-(80, 100) plateau; depth 2 and 3 branches are on the flat tops.
  const double comment = 80.0 + (1.0 / 6.0 - 0.1) / 0.15 * 20.0;
  const double readability = (comment + 100.0) / 2.0;
  const double complexity = 100.0;
  CHECK(g.correctness_score == 64.2);
  CHECK(g.readability_score == doctest::Approx(readability).epsilon(1e-12));
  CHECK(g.complexity_score == complexity);
  CHECK(g.final_score == doctest::Approx(0.6 * 64.2 + 0.2 * readability + 0.2 * complexity).epsilon(1e-12));
  REQUIRE(g.feedback.size() == 4);
  CHECK(g.feedback[0] == "correctness: 64.2 (fair)");
  CHECK(g.feedback[1].starts_with("readability: 94.4 (excellent)"));
  CHECK(g.feedback[2] == "complexity: 100.0 (excellent)");
  CHECK(g.feedback[3].starts_with("weakest: rubric_similarity"));

  GradeWeights only_ai{1.0, 0.0, 0.0};
  CHECK(grade_submission(sub, alloc, Difficulty::kEasy, model, only_ai).final_score == g.correctness_score);
  GradeWeights invalid{0.5, 0.5, 0.5};
  CHECK(code_of([&] { grade_submission(sub, alloc, Difficulty::kEasy, model, invalid); }) ==
        ErrorCode::kInvalidWeights);
}

TEST_CASE("score bands") {
  CHECK(score_band(85) == "excellent");
  CHECK(score_band(84.99) == "good");
  CHECK(score_band(70) == "good");
  CHECK(score_band(50) == "fair");
  CHECK(score_band(49.9) == "needs work");
}

// ---------------------------------------------------------------- viva

TEST_CASE("score_viva_answer examples") {
  const std::string rubric =
      "A decision tree splits the data on the feature and threshold that most reduce impurity, then recurses.";
  const auto& vec = feature_vectorizer();
  CHECK(score_viva_answer(rubric, rubric, vec).score == 100.0);
  CHECK(score_viva_answer("completely unrelated words about cooking pasta", rubric, vec).score == 0.0);

  // Oracle: plain log-tf cosine (empty document statistics give idf 1).
  const oracle::DocFreq no_stats;
  const std::string short_answer = "impurity threshold recursion";
  const double expected_short = std::min(40.0, 100.0 * oracle::text_cosine(short_answer, rubric, no_stats));
  CHECK(score_viva_answer(short_answer, rubric, vec).score == doctest::Approx(expected_short).epsilon(1e-12));

  const std::string tiny_rubric = "gradient descent";
  const auto capped = score_viva_answer("gradient descent", tiny_rubric, vec);
  CHECK(capped.score == 40.0);
  CHECK(capped.feedback.find("capped") != std::string::npos);

  const std::string long_answer =
      "It picks the feature and threshold that reduce impurity the most, splits the data, and recurses on each side.";
  const double expected_long = 100.0 * oracle::text_cosine(long_answer, rubric, no_stats);
  CHECK(expected_long > 40.0);
  CHECK(score_viva_answer(long_answer, rubric, vec).score == doctest::Approx(expected_long).epsilon(1e-12));

  CHECK(code_of([&] { score_viva_answer("x", "  ", vec); }) == ErrorCode::kEmptyRubric);
  CHECK(code_of([&] { score_viva_answer("x", "?!", vec); }) == ErrorCode::kEmptyRubric);
}
