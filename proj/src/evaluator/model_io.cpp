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

#include "labgrade/evaluator/model_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "labgrade/core/errors.hpp"

namespace labgrade::evaluator {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kFormat = "labgrade-gbt";
constexpr int kFormatVersion = 1;

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::kMalformedModel, what); }

}  // namespace

std::string serialize_model(const GbtModel& model) {
  ordered_json j;
  j["format"] = kFormat;
  j["format_version"] = kFormatVersion;
  j["feature_schema_version"] = model.feature_schema_version;
  j["feature_count"] = model.feature_count;
  if (model.feature_count == kFeatureCount) {
    auto names = ordered_json::array();
    for (std::size_t i = 0; i < kFeatureCount; ++i) names.push_back(feature_name(i));
    j["feature_names"] = std::move(names);
  }
  j["base_prediction"] = model.base_prediction;
  j["learning_rate"] = model.learning_rate;
  j["n_trees"] = model.n_trees;
  j["max_depth"] = model.max_depth;
  j["subsample"] = model.subsample;
  j["colsample"] = model.colsample;
  j["seed"] = model.seed;
  j["training_rows"] = model.training_rows;
  auto trees = ordered_json::array();
  for (const auto& tree : model.trees) {
    auto nodes = ordered_json::array();
    for (const auto& n : tree.nodes) nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
    trees.push_back(std::move(nodes));
  }
  j["trees"] = std::move(trees);
  return j.dump();
}

GbtModel parse_model(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(fmt::format("model is not JSON: {}", e.what()));
  }
  GbtModel m;
  try {
    if (j.at("format") != kFormat) malformed("not a labgrade-gbt model");
    if (j.at("format_version").get<int>() != kFormatVersion) malformed("unsupported model format_version");
    m.feature_schema_version = j.at("feature_schema_version").get<int>();
    m.feature_count = j.at("feature_count").get<std::size_t>();
    m.base_prediction = j.at("base_prediction").get<double>();
    m.learning_rate = j.at("learning_rate").get<double>();
    m.n_trees = j.at("n_trees").get<int>();
    m.max_depth = j.at("max_depth").get<int>();
    m.subsample = j.at("subsample").get<double>();
    m.colsample = j.at("colsample").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.training_rows = j.at("training_rows").get<std::size_t>();
    for (const auto& jt : j.at("trees")) {
      RegressionTree tree;
      for (const auto& jn : jt) {
        if (!jn.is_array() || jn.size() != 5) malformed("tree node must be [feature, threshold, left, right, value]");
        tree.nodes.push_back({jn[0].get<int>(), jn[1].get<double>(), jn[2].get<int>(), jn[3].get<int>(),
                              jn[4].get<double>()});
      }
      m.trees.push_back(std::move(tree));
    }
  } catch (const nlohmann::json::exception& e) {
    malformed(fmt::format("model field error: {}", e.what()));
  }

  if (m.trees.size() != static_cast<std::size_t>(std::max(0, m.n_trees))) malformed("tree count differs from n_trees");
  for (std::size_t t = 0; t < m.trees.size(); ++t) {
    const auto& nodes = m.trees[t].nodes;
    if (nodes.empty()) malformed(fmt::format("tree {} has no nodes", t));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      if (n.is_leaf()) continue;
      const auto size = static_cast<int>(nodes.size());
      if (static_cast<std::size_t>(n.feature) >= m.feature_count || n.left <= static_cast<int>(i) ||
          n.right <= static_cast<int>(i) || n.left >= size || n.right >= size) {
        malformed(fmt::format("tree {} node {} has a bad feature or child index", t, i));
      }
    }
    if (m.trees[t].depth() > m.max_depth) malformed(fmt::format("tree {} deeper than max_depth", t));
  }
  return m;
}

void save_model(const GbtModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", path.string()), {path.string()});
  out << serialize_model(model) << '\n';
  if (!out.flush()) throw Error(ErrorCode::kIo, fmt::format("write to {} failed", path.string()), {path.string()});
}

GbtModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read {}", path.string()), {path.string()});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace labgrade::evaluator
