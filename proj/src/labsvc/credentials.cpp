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

#include "labgrade/labsvc/credentials.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <array>
#include <charconv>
#include <optional>
#include <vector>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"

namespace labgrade::labsvc {
namespace {

constexpr std::string_view kScheme = "pbkdf2-sha256";
constexpr std::size_t kKeyBytes = 32;

std::vector<unsigned char> derive(std::string_view password, std::span<const unsigned char> salt, int iterations) {
  std::vector<unsigned char> key(kKeyBytes);
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt.data(), static_cast<int>(salt.size()),
                        iterations, EVP_sha256(), static_cast<int>(key.size()), key.data()) != 1) {
    throw Error(ErrorCode::kIo, "PBKDF2 derivation failed");
  }
  return key;
}

std::optional<std::vector<unsigned char>> hex_decode(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  std::vector<unsigned char> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(hex.data() + 2 * i, hex.data() + 2 * i + 2, v, 16);
    if (ec != std::errc{} || p != hex.data() + 2 * i + 2) return std::nullopt;
    out[i] = static_cast<unsigned char>(v);
  }
  return out;
}

}  // namespace

std::string hex_encode(std::span<const unsigned char> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::string hash_password_with_salt(std::string_view password, std::span<const unsigned char> salt, int iterations) {
  if (iterations < 1) throw Error(ErrorCode::kValidationFailed, "iterations must be positive", {"iterations"});
  const auto key = derive(password, salt, iterations);
  return fmt::format("{}${}${}${}", kScheme, iterations, hex_encode(salt), hex_encode(key));
}

std::string hash_password(std::string_view password, int iterations) {
  std::array<unsigned char, kSaltBytes> salt{};
  if (RAND_bytes(salt.data(), static_cast<int>(salt.size())) != 1) throw Error(ErrorCode::kIo, "RAND_bytes failed");
  return hash_password_with_salt(password, salt, iterations);
}

bool verify_password(std::string_view password, std::string_view encoded) {
  // scheme $ iterations $ salt $ key
  std::array<std::string_view, 4> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto end = i == 3 ? encoded.size() : encoded.find('$', start);
    if (end == std::string_view::npos) return false;
    parts[i] = encoded.substr(start, end - start);
    start = end + 1;
  }
  if (parts[0] != kScheme || parts[3].find('$') != std::string_view::npos) return false;
  int iterations = 0;
  auto [p, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), iterations);
  if (ec != std::errc{} || p != parts[1].data() + parts[1].size() || iterations < 1) return false;
  const auto salt = hex_decode(parts[2]);
  const auto stored = hex_decode(parts[3]);
  if (!salt || !stored || stored->size() != kKeyBytes) return false;
  const auto key = derive(password, *salt, iterations);
  return CRYPTO_memcmp(key.data(), stored->data(), kKeyBytes) == 0;
}

std::string random_token(std::size_t bytes) {
  std::vector<unsigned char> buf(bytes);
  if (RAND_bytes(buf.data(), static_cast<int>(buf.size())) != 1) throw Error(ErrorCode::kIo, "RAND_bytes failed");
  return hex_encode(buf);
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, SHA256_DIGEST_LENGTH> digest{};
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest.data());
  return hex_encode(digest);
}

}  // namespace labgrade::labsvc
