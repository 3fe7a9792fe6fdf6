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
#include <set>

#include "labgrade/core/errors.hpp"
#include "labgrade/genpipe/allocate.hpp"
#include "labgrade/genpipe/external.hpp"
#include "labgrade/genpipe/generator.hpp"
#include "labgrade/genpipe/rng.hpp"
#include "labgrade/textsim/tokenize.hpp"

using namespace labgrade;
using namespace labgrade::genpipe;

namespace {

// Locked when the template bank was authored; any bank edit that changes
// this text must be deliberate.
constexpr const char* kGoldenKnnQuestion =
    "Classify Seeds samples with k-nearest neighbors; use k = 11, standardise features first, and print the macro "
    "F1 score. Hold out 30 percent of the rows for testing and fix the random seed. Remove rows with missing values "
    "before training and report how many were dropped. Report the confusion between the two most mixed-up outcomes.";

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double max_pairwise(const std::vector<GeneratedQuestion>& qs, const textsim::Vectorizer& vec) {
  std::vector<textsim::TextVector> vs;
  for (const auto& q : qs) vs.push_back(vec.vectorize(q.question_text));
  double best = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) best = std::max(best, textsim::cosine(vs[i], vs[j]));
  return best;
}

// Emits the same question on every call.
class StuckSource final : public QuestionSource {
 public:
  GeneratorBackend backend() const override { return GeneratorBackend::kExternal; }
  GeneratedQuestion generate(const GenerationRequest& req, std::uint64_t, std::span<const std::string>) const override {
    GeneratedQuestion q;
    q.question_text = "Implement " + req.topic_keywords.front() + " on Iris.";
    q.rubric_answer = "fit and score";
    q.difficulty = req.difficulty;
    return q;
  }
};

Lab draft_lab(std::string id, std::vector<std::string> keywords) {
  Lab lab;
  lab.lab_id = std::move(id);
  lab.title = "Lab";
  lab.topic_keywords = std::move(keywords);
  lab.deadline = from_epoch_seconds(1'900'000'000);
  return lab;
}

}  // namespace

TEST_CASE("SplitMix64 reference sequence") {
  // First outputs for seed 0 as published with the generator.
  SplitMix64 rng(0);
  CHECK(rng() == 0xe220a8397b1dcdafULL);
  CHECK(rng() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng() == 0x06c45d188009454fULL);
  SplitMix64 r2(5);
  for (int i = 0; i < 1000; ++i) CHECK(r2.below(7) < 7);
}

TEST_CASE("template_generate golden output") {
  const std::vector<std::string> kw = {"k-nearest neighbors"};
  const auto q = template_generate(kw, Difficulty::kEasy, 7, 0);
  CHECK(q.question_text == kGoldenKnnQuestion);
  CHECK(lower(q.question_text).find("k-nearest neighbors") != std::string::npos);
  CHECK(q.question_text.find("k = ") != std::string::npos);
  CHECK_FALSE(q.rubric_answer.empty());
  CHECK(q.provenance.seed == 7);
  CHECK(q.provenance.backend == GeneratorBackend::kTemplate);
}

TEST_CASE("template_generate is pure and attempt-sensitive") {
  const std::vector<std::string> kw = {"svm"};
  CHECK(template_generate(kw, Difficulty::kEasy, 7, 0) == template_generate(kw, Difficulty::kEasy, 7, 0));
  CHECK(template_generate(kw, Difficulty::kEasy, 7, 0).question_text !=
        template_generate(kw, Difficulty::kEasy, 7, 1).question_text);
  CHECK(template_generate(kw, Difficulty::kEasy, 7, 0).question_text !=
        template_generate(kw, Difficulty::kHard, 7, 0).question_text);
}

TEST_CASE("unknown keyword uses the fallback template") {
  const std::vector<std::string> kw = {"frobnication"};
  const auto q = template_generate(kw, Difficulty::kMedium, 1, 0);
  CHECK(q.question_text.find("frobnication") != std::string::npos);
  CHECK_FALSE(q.rubric_answer.empty());
}

TEST_CASE("every topic and tier renders with the keyword and no open slots") {
  const std::vector<std::string> topics = {"decision tree", "random forest", "k-nn", "svm",
                                           "linear regression", "logistic regression", "cnn", "rnn",
                                           "lstm", "optimizer", "something else"};
  for (const auto& t : topics) {
    for (auto d : {Difficulty::kEasy, Difficulty::kMedium, Difficulty::kHard}) {
      for (std::uint64_t a = 0; a < 20; ++a) {
        const std::vector<std::string> kw = {t};
        const auto q = template_generate(kw, d, 42, a);
        CAPTURE(q.question_text);
        CHECK(lower(q.question_text).find(t) != std::string::npos);
        CHECK(q.question_text.find('{') == std::string::npos);
        CHECK(q.rubric_answer.find('{') == std::string::npos);
        CHECK(q.difficulty == d);
      }
    }
  }
}

TEST_CASE("generate_batch examples") {
  GenerationRequest req;
  req.topic_keywords = {"decision tree"};
  req.student_count = 1;
  const auto& vec = default_question_vectorizer();
  const auto one = generate_batch(req, vec);
  REQUIRE(one.size() == 1);
  CHECK(lower(one[0].question_text).find("decision tree") != std::string::npos);
  CHECK(generate_batch(req, vec) == one);

  req.student_count = 30;
  const auto thirty = generate_batch(req, vec);
  REQUIRE(thirty.size() == 30);
  CHECK(max_pairwise(thirty, vec) < req.dedup_threshold);
  CHECK(generate_batch(req, vec) == thirty);
  for (const auto& q : thirty) CHECK(lower(q.question_text).find("decision tree") != std::string::npos);
}

TEST_CASE("property: batches are unique across keywords, difficulties and seeds") {
  const auto& vec = default_question_vectorizer();
  const std::vector<std::vector<std::string>> keyword_sets = {
      {"random forest"}, {"svm", "k-nn"}, {"lstm"}, {"optimizer", "cnn"}, {"frobnication"}};
  for (const auto& kws : keyword_sets) {
    for (std::uint64_t seed : {1u, 42u, 1234u}) {
      GenerationRequest req;
      req.topic_keywords = kws;
      req.seed = seed;
      req.difficulty = static_cast<Difficulty>(seed % 3);
      req.student_count = 25;
      const auto batch = generate_batch(req, vec);
      CHECK(batch.size() == 25);
      CHECK(max_pairwise(batch, vec) < req.dedup_threshold);
      for (const auto& q : batch) {
        const auto text = lower(q.question_text);
        CHECK(std::any_of(kws.begin(), kws.end(), [&](const auto& k) { return text.find(lower(k)) != std::string::npos; }));
      }
    }
  }
}

TEST_CASE("generate_batch validation and exhaustion") {
  GenerationRequest req;
  req.topic_keywords = {};
  CHECK_THROWS_AS(validate_request(req), Error);
  req.topic_keywords = {"svm"};
  req.student_count = 0;
  CHECK_THROWS_AS(validate_request(req), Error);
  req.student_count = 1;
  req.max_attempts_per_question = 0;
  CHECK_THROWS_AS(validate_request(req), Error);

  req.max_attempts_per_question = 3;
  req.student_count = 4;
  StuckSource stuck;
  try {
    generate_batch(req, default_question_vectorizer(), stuck);
    FAIL("expected DiversityExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDiversityExhausted);
    REQUIRE_FALSE(e.details().empty());
    CHECK(e.details().front() == "achieved=1");
  }
}

TEST_CASE("parse_generator_response") {
  const auto qa = parse_generator_response("QUESTION:\nTrain an SVM.\nANSWER:\nfrom sklearn.svm import SVC\n");
  CHECK(qa.question == "Train an SVM.");
  CHECK(qa.answer == "from sklearn.svm import SVC");
  CHECK_THROWS_AS(parse_generator_response("no sections here"), Error);
  CHECK_THROWS_AS(parse_generator_response("QUESTION:\n\nANSWER:\nx"), Error);
}

TEST_CASE("external backend without a server is unavailable after retries") {
  ExternalGeneratorConfig cfg;
  cfg.base_url = "http://127.0.0.1:1";
  cfg.timeout_ms = 200;
  cfg.retry_budget = 1;
  ExternalSource src(cfg);
  GenerationRequest req;
  req.topic_keywords = {"svm"};
  try {
    src.generate(req, 0, {});
    FAIL("expected BackendUnavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBackendUnavailable);
  }
}

TEST_CASE("allocate_lab examples") {
  const auto& vec = default_question_vectorizer();
  const auto now = from_epoch_seconds(1'800'000'000);

  const std::vector<std::string> one = {"s1"};
  const auto r1 = allocate_lab(draft_lab("L1", {"cnn"}), one, vec, nullptr, now);
  CHECK(r1.lab.state == LabState::kAllocated);
  REQUIRE(r1.allocations.size() == 1);
  CHECK(r1.allocations[0].allocation_id == "L1-1");
  CHECK(r1.allocations[0].student_id == "s1");
  CHECK(r1.allocations[0].generated_at == now);

  CHECK_THROWS_AS(allocate_lab(r1.lab, one, vec, nullptr, now), Error);

  std::vector<std::string> roster;
  for (int i = 0; i < 10; ++i) roster.push_back("student" + std::to_string(i));
  const auto r10 = allocate_lab(draft_lab("L2", {"random forest"}), roster, vec, nullptr, now);
  REQUIRE(r10.allocations.size() == 10);
  std::set<std::string> students, questions;
  for (const auto& a : r10.allocations) {
    students.insert(a.student_id);
    questions.insert(a.question_text);
    CHECK(a.lab_id == "L2");
  }
  CHECK(students == std::set<std::string>(roster.begin(), roster.end()));
  CHECK(questions.size() == 10);

  // Same settings under another lab id yield a different question set.
  const auto other = allocate_lab(draft_lab("L3", {"random forest"}), roster, vec, nullptr, now);
  CHECK(other.allocations[0].question_text != r10.allocations[0].question_text);
}

TEST_CASE("allocate_lab failures leave nothing behind") {
  const auto& vec = default_question_vectorizer();
  const auto now = from_epoch_seconds(0);
  const std::vector<std::string> empty;
  CHECK_THROWS_AS(allocate_lab(draft_lab("L", {"svm"}), empty, vec, nullptr, now), Error);
  const std::vector<std::string> repeated = {"a", "a"};
  CHECK_THROWS_AS(allocate_lab(draft_lab("L", {"svm"}), repeated, vec, nullptr, now), Error);

  Lab ext = draft_lab("L", {"svm"});
  ext.policy.backend = GeneratorBackend::kExternal;
  const std::vector<std::string> roster = {"a", "b", "c"};
  try {
    allocate_lab(ext, roster, vec, nullptr, now);
    FAIL("expected BackendUnavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBackendUnavailable);
  }
  StuckSource stuck;
  try {
    allocate_lab(ext, roster, vec, &stuck, now);
    FAIL("expected DiversityExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDiversityExhausted);
  }
}

TEST_CASE("viva questions are distinct and sized") {
  const std::vector<std::string> kw = {"lstm"};
  for (int n : {1, 3, 6, 9}) {
    const auto items = make_viva_questions(kw, Difficulty::kMedium, n, 42);
    CHECK(items.size() == static_cast<std::size_t>(n));
    std::set<std::string> texts;
    for (const auto& it : items) {
      texts.insert(it.question);
      CHECK_FALSE(it.rubric_answer.empty());
    }
    CHECK(texts.size() == items.size());
  }
  CHECK(make_viva_questions(kw, Difficulty::kMedium, 3, 42) == make_viva_questions(kw, Difficulty::kMedium, 3, 42));
}
