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

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "labgrade/genpipe/generator.hpp"
#include "labgrade/genpipe/rng.hpp"
#include "labgrade/genpipe/template_bank.hpp"

namespace labgrade::genpipe {
namespace {

struct Slots {
  std::string_view keyword;
  std::string_view dataset;
  std::string_view metric;
  std::string_view param;
  std::string_view value;
};

std::string render(std::string_view tpl, const Slots& s) {
  return fmt::format(fmt::runtime(tpl), fmt::arg("keyword", s.keyword), fmt::arg("dataset", s.dataset),
                     fmt::arg("metric", s.metric), fmt::arg("param", s.param), fmt::arg("value", s.value));
}

std::uint64_t keywords_hash(std::span<const std::string> keywords) {
  std::uint64_t h = hash_text("");
  for (const auto& k : keywords) h = mix_seed({h, hash_text(k)});
  return h;
}

template <typename T>
const T& pick(SplitMix64& rng, const std::vector<T>& pool) {
  return pool[rng.below(pool.size())];
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

GeneratedQuestion template_generate(std::span<const std::string> keywords, Difficulty difficulty,
                                    std::uint64_t seed, std::uint64_t attempt_index) {
  const auto& bank = template_bank();
  const int tier = difficulty_ordinal(difficulty) - 1;
  SplitMix64 rng(mix_seed({seed, attempt_index, static_cast<std::uint64_t>(tier), keywords_hash(keywords)}));

  const std::string_view keyword = keywords.empty() ? std::string_view("machine learning")
                                                    : trim(keywords[rng.below(keywords.size())]);
  const Topic* found = find_topic(keyword);
  const Topic& topic = found ? *found : bank.fallback;

  const Clause& body = pick(rng, topic.tiers[tier]);
  const auto& dataset = pick(rng, topic.datasets);
  const auto& metric = pick(rng, topic.metrics);
  const Hyperparameter& hp = pick(rng, topic.hyperparameters);
  const auto& value = pick(rng, hp.values);

  // Two distinct variation clauses from the topic pool plus the shared pool.
  std::vector<const Clause*> variations;
  for (const auto& c : topic.variations) variations.push_back(&c);
  for (const auto& c : bank.variations) variations.push_back(&c);
  const std::size_t first = rng.below(variations.size());
  std::size_t second = rng.below(variations.size() - 1);
  if (second >= first) ++second;
  const Clause& deliverable = pick(rng, bank.deliverables);

  const Slots slots{keyword, dataset, metric, hp.name, value};
  const Clause* parts[] = {&body, variations[first], variations[second], &deliverable};

  GeneratedQuestion q;
  for (const Clause* c : parts) {
    if (!q.question_text.empty()) {
      q.question_text += ' ';
      q.rubric_answer += ' ';
    }
    q.question_text += render(c->question, slots);
    q.rubric_answer += render(c->answer, slots);
  }
  q.difficulty = difficulty;
  q.provenance = {GeneratorBackend::kTemplate, 1, seed, attempt_index, std::string(keyword)};
  return q;
}

GeneratedQuestion TemplateSource::generate(const GenerationRequest& req, std::uint64_t attempt_index,
                                           std::span<const std::string>) const {
  return template_generate(req.topic_keywords, req.difficulty, req.seed, attempt_index);
}

std::vector<VivaItem> make_viva_questions(std::span<const std::string> keywords, Difficulty difficulty, int count,
                                          std::uint64_t seed) {
  const auto& bank = template_bank();
  std::vector<const Clause*> topic_pool;
  std::vector<const Topic*> seen;
  for (const auto& k : keywords) {
    const Topic* t = find_topic(k);
    if (!t || std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
    seen.push_back(t);
    for (const auto& c : t->viva) topic_pool.push_back(&c);
  }
  SplitMix64 rng(mix_seed({seed, static_cast<std::uint64_t>(difficulty_ordinal(difficulty)), keywords_hash(keywords)}));

  auto shuffled = [&rng](std::vector<const Clause*> pool) {
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
    return pool;
  };
  std::vector<const Clause*> order = shuffled(topic_pool);
  std::vector<const Clause*> generic;
  for (const auto& c : bank.viva) generic.push_back(&c);
  for (const Clause* c : shuffled(generic)) order.push_back(c);

  std::vector<VivaItem> out;
  for (int i = 0; i < count; ++i) {
    // Pools hold at least five generic items; beyond that, questions repeat.
    const Clause* c = order[static_cast<std::size_t>(i) % order.size()];
    out.push_back({std::string(c->question), std::string(c->answer)});
  }
  return out;
}

}  // namespace labgrade::genpipe
