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

// Shared set-up for service tests: a settable clock, a small grading model
// trained on synthetic code, and a seeded roster.

#include <algorithm>
#include <atomic>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "labgrade/core/time.hpp"
#include "labgrade/evaluator/features.hpp"
#include "labgrade/evaluator/gbt.hpp"
#include "labgrade/labsvc/service.hpp"
#include "synthetic.hpp"

namespace harness {

class ManualClock final : public labgrade::Clock {
 public:
  explicit ManualClock(std::int64_t epoch) : t_(epoch) {}
  labgrade::Timestamp now() const override { return labgrade::from_epoch_seconds(t_.load()); }
  void advance(std::int64_t seconds) { t_ += seconds; }
  void set(std::int64_t epoch) { t_ = epoch; }

 private:
  std::atomic<std::int64_t> t_;
};

// Monday 2026-10-19 09:00 UTC.
inline constexpr std::int64_t kStart = 1792400400;
inline constexpr std::int64_t kDay = 86400;
inline constexpr int kTestIterations = 1000;

inline std::shared_ptr<const labgrade::evaluator::GbtModel> small_model() {
  static const auto model = [] {
    using namespace labgrade::evaluator;
    std::mt19937_64 rng(7);
    FeatureMatrix x;
    x.cols = kFeatureCount;
    std::vector<double> y;
    const std::string question = "Implement a decision tree classifier and report accuracy";
    for (int i = 0; i < 120; ++i) {
      const auto code = synth::synthetic_code(rng);
      const auto fv = extract_features(code, question, question, labgrade::Difficulty::kMedium, feature_vectorizer());
      x.push_back(std::vector<double>(fv.values.begin(), fv.values.end()));
      const double target = 35.0 + 1.5 * fv[Feature::kLineCount] + 40.0 * fv[Feature::kCommentRatio] +
                            3.0 * fv[Feature::kBranchKeywordCount];
      y.push_back(std::clamp(target, 0.0, 100.0));
    }
    GbtConfig config;
    config.n_trees = 40;
    config.max_depth = 3;
    config.learning_rate = 0.1;
    return std::make_shared<const GbtModel>(train_gbt(x, y, config, 42));
  }();
  return model;
}

inline labgrade::Lab sample_lab(std::int64_t deadline = kStart + 7 * kDay) {
  labgrade::Lab lab;
  lab.title = "Tree models";
  lab.section = "A";
  lab.topic_keywords = {"decision tree", "random forest"};
  lab.difficulty = labgrade::Difficulty::kMedium;
  lab.viva_duration_minutes = 15;
  lab.mode = labgrade::LabMode::kNonProctored;
  lab.description = "Supervised learning with trees";
  lab.instructions = "Submit one Python file";
  lab.deadline = labgrade::from_epoch_seconds(deadline);
  return lab;
}

inline const char* kGoodCode =
    "# fit a decision tree and report accuracy\n"
    "from sklearn.tree import DecisionTreeClassifier\n"
    "\n"
    "def train(features, labels, depth):\n"
    "    # limit depth to avoid overfitting\n"
    "    model = DecisionTreeClassifier(max_depth=depth)\n"
    "    model.fit(features, labels)\n"
    "    if depth > 3:\n"
    "        print('deep tree')\n"
    "    return model\n";

struct Roster {
  std::string faculty = "f1";
  std::vector<std::string> students;
};

// f1 (section A) and f2 (section B), then `n` students s01.. in section A.
inline Roster seed_users(labgrade::labsvc::LabService& svc, int n = 10) {
  using labgrade::Role;
  Roster r;
  svc.register_user("f1", Role::kFaculty, "faculty-pass", "Faculty One", "A");
  svc.register_user("f2", Role::kFaculty, "faculty-pass", "Faculty Two", "B");
  for (int i = 1; i <= n; ++i) {
    const auto id = fmt::format("s{:02}", i);
    svc.register_user(id, Role::kStudent, "student-pass-" + id, "Student " + id, "A");
    r.students.push_back(id);
  }
  return r;
}

inline labgrade::labsvc::ServiceConfig test_config(const ManualClock& clock) {
  labgrade::labsvc::ServiceConfig c;
  c.clock = &clock;
  c.pbkdf2_iterations = kTestIterations;
  c.model = small_model();
  c.sync_writes = false;
  return c;
}

inline labgrade::labsvc::Principal as(const std::string& id, labgrade::Role role) { return {id, role}; }
inline labgrade::labsvc::Principal faculty(const std::string& id = "f1") { return {id, labgrade::Role::kFaculty}; }
inline labgrade::labsvc::Principal student(const std::string& id) { return {id, labgrade::Role::kStudent}; }

}  // namespace harness
