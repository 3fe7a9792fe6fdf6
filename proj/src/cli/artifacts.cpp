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

#include "labgrade/cli/artifacts.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"

namespace labgrade::cli {

namespace {

using Ctx = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

std::string finish(EVP_MD_CTX* ctx) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", md[i]);
  return out;
}

std::string sha256(std::string_view bytes) {
  Ctx ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size());
  return finish(ctx.get());
}

}  // namespace

nlohmann::ordered_json to_json(const ArtifactMeta& m) {
  return {{"command", m.command},
          {"seed", m.seed},
          {"config_hash", m.config_hash},
          {"input_sha256", m.input_sha256.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(m.input_sha256)}};
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read {}", path.string()), {path.string()});
  Ctx ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return finish(ctx.get());
}

// nlohmann::json (not ordered_json) keeps object keys sorted.
std::string config_hash(const nlohmann::json& config) { return sha256(config.dump()); }

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", path.string()), {path.string()});
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, fmt::format("cannot rename into {}: {}", path.string(), ec.message()), {path.string()});
}

void write_json_artifact(const std::filesystem::path& path, const ArtifactMeta& meta, nlohmann::ordered_json body) {
  nlohmann::ordered_json doc;
  doc["metadata"] = to_json(meta);
  for (auto& [k, v] : body.items()) doc[k] = std::move(v);
  write_file(path, doc.dump(2) + "\n");
}

void write_csv_artifact(const std::filesystem::path& path, const ArtifactMeta& meta, std::string_view csv) {
  std::string text;
  const auto block = to_json(meta);
  for (const auto& [k, v] : block.items()) {
    text += fmt::format("# {}: {}\n", k, v.is_string() ? v.get<std::string>() : v.dump());
  }
  text += csv;
  write_file(path, text);
}

void write_jsonl_artifact(const std::filesystem::path& path, const ArtifactMeta& meta, std::string_view jsonl) {
  write_file(path, jsonl);
  auto side = path;
  side += ".meta.json";
  write_json_artifact(side, meta, {{"artifact", path.filename().string()}, {"sha256", sha256(jsonl)}});
}

std::string stamp_model(std::string_view model_json, const ArtifactMeta& meta) {
  auto end = model_json.find_last_of('}');
  if (end == std::string_view::npos) throw Error(ErrorCode::kMalformedModel, "model text is not an object");
  return fmt::format("{},\"metadata\":{}}}\n", model_json.substr(0, end), to_json(meta).dump());
}

}  // namespace labgrade::cli
