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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace labgrade::labsvc {

inline constexpr int kDefaultPbkdf2Iterations = 120000;
inline constexpr std::size_t kSaltBytes = 16;

// Encoded as "pbkdf2-sha256$<iterations>$<salt hex>$<key hex>" so the work
// factor travels with each stored credential.
std::string hash_password(std::string_view password, int iterations = kDefaultPbkdf2Iterations);
std::string hash_password_with_salt(std::string_view password, std::span<const unsigned char> salt, int iterations);

// Recomputes the key and compares in constant time. Malformed encodings
// verify as false.
bool verify_password(std::string_view password, std::string_view encoded);

// Hex of `bytes` bytes from the OpenSSL CSPRNG.
std::string random_token(std::size_t bytes = 32);

std::string sha256_hex(std::string_view data);
std::string hex_encode(std::span<const unsigned char> bytes);

}  // namespace labgrade::labsvc
