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

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace labgrade::genpipe {

// A question fragment and the matching piece of the rubric answer. Both may
// use the slots {keyword} {dataset} {metric} {param} {value}.
struct Clause {
  std::string_view question;
  std::string_view answer;
};

struct Hyperparameter {
  std::string_view name;
  std::vector<std::string_view> values;
};

struct Topic {
  std::string_view name;
  // Lowercase substrings; a keyword selects this topic when it contains one
  // of them.
  std::vector<std::string_view> aliases;
  std::vector<std::string_view> datasets;
  std::vector<std::string_view> metrics;
  std::vector<Hyperparameter> hyperparameters;
  // Indexed by difficulty ordinal - 1.
  std::array<std::vector<Clause>, 3> tiers;
  std::vector<Clause> variations;
  std::vector<Clause> viva;
};

struct TemplateBank {
  std::vector<Topic> topics;
  Topic fallback;                    // generic "implement and evaluate"
  std::vector<Clause> variations;    // shared by every topic
  std::vector<Clause> deliverables;  // shared closing requirements
  std::vector<Clause> viva;          // generic viva questions
};

const TemplateBank& template_bank();

// Topic whose alias occurs in the lowercased keyword, or nullptr.
const Topic* find_topic(std::string_view keyword);

// Every literal string in the bank, used to seed vectorizer statistics.
std::vector<std::string> bank_documents();

}  // namespace labgrade::genpipe
