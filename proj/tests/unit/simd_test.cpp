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

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <random>
#include <vector>

#include "labgrade/simd/kernels.hpp"

namespace simd = labgrade::simd;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (auto& x : v) {
    // Mixed magnitudes make reduction order visible in the low bits.
    const double mant = static_cast<double>(rng() % 2000001) / 1000000.0 - 1.0;
    const int exp = static_cast<int>(rng() % 20) - 10;
    x = scale * std::ldexp(mant, exp);
  }
  return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

std::vector<simd::Backend> vector_backends() {
  std::vector<simd::Backend> out;
  for (auto b : {simd::Backend::kAvx2, simd::Backend::kNeon}) {
    if (simd::backend_supported(b)) out.push_back(b);
  }
  return out;
}

}  // namespace

TEST_CASE("scalar reference agrees with a long double sum") {
  std::mt19937_64 rng(1);
  const auto& k = simd::kernels_for(simd::Backend::kScalar);
  for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 1000u}) {
    auto a = random_vector(rng, n, 1.0);
    auto b = random_vector(rng, n, 1.0);
    long double dot = 0, s = 0, ss = 0, sd = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += static_cast<long double>(a[i]) * b[i];
      s += a[i];
      ss += static_cast<long double>(a[i]) * a[i];
      sd += (static_cast<long double>(a[i]) - b[i]) * (static_cast<long double>(a[i]) - b[i]);
    }
    CHECK(k.dot(a.data(), b.data(), n) == doctest::Approx(static_cast<double>(dot)).epsilon(1e-12));
    CHECK(k.sum(a.data(), n) == doctest::Approx(static_cast<double>(s)).epsilon(1e-12));
    CHECK(k.sum_squares(a.data(), n) == doctest::Approx(static_cast<double>(ss)).epsilon(1e-12));
    CHECK(k.squared_distance(a.data(), b.data(), n) == doctest::Approx(static_cast<double>(sd)).epsilon(1e-12));
  }
}

TEST_CASE("vector kernels are bit-identical to the scalar reference") {
  const auto backends = vector_backends();
  if (backends.empty()) {
    MESSAGE("no vector backend on this machine; equivalence vacuous");
    return;
  }
  const auto& ref = simd::kernels_for(simd::Backend::kScalar);
  std::mt19937_64 rng(7);
  for (auto backend : backends) {
    CAPTURE(simd::backend_name(backend));
    const auto& vk = simd::kernels_for(backend);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = rng() % 97;
      auto a = random_vector(rng, n, 3.0);
      auto b = random_vector(rng, n, 3.0);
      CHECK(same_bits(vk.dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n)));
      CHECK(same_bits(vk.sum(a.data(), n), ref.sum(a.data(), n)));
      CHECK(same_bits(vk.sum_squares(a.data(), n), ref.sum_squares(a.data(), n)));
      CHECK(same_bits(vk.squared_distance(a.data(), b.data(), n), ref.squared_distance(a.data(), b.data(), n)));

      const double alpha = static_cast<double>(rng() % 1000) / 37.0 - 13.0;
      auto y_ref = b;
      auto y_vec = b;
      ref.axpy(alpha, a.data(), y_ref.data(), n);
      vk.axpy(alpha, a.data(), y_vec.data(), n);
      CHECK(std::memcmp(y_ref.data(), y_vec.data(), n * sizeof(double)) == 0);

      std::vector<double> s_ref(n), s_vec(n);
      ref.shift(a.data(), alpha, s_ref.data(), n);
      vk.shift(a.data(), alpha, s_vec.data(), n);
      CHECK(std::memcmp(s_ref.data(), s_vec.data(), n * sizeof(double)) == 0);
    }
  }
}

TEST_CASE("span wrappers follow the forced backend and check lengths") {
  const auto original = simd::active_backend();
  std::vector<double> a{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> b{10, 9, 8, 7, 6, 5, 4, 3, 2, 1};

  simd::force_backend(simd::Backend::kScalar);
  CHECK(simd::active_backend() == simd::Backend::kScalar);
  const double scalar_dot = simd::dot(a, b);
  CHECK(scalar_dot == 220.0);
  for (auto backend : vector_backends()) {
    simd::force_backend(backend);
    CHECK(simd::dot(a, b) == scalar_dot);
    CHECK(simd::sum(a) == 55.0);
  }
  std::vector<double> shorter{1, 2};
  CHECK_THROWS_AS(simd::dot(a, shorter), std::invalid_argument);
  CHECK_THROWS_AS(simd::axpy(1.0, a, std::span<double>(shorter)), std::invalid_argument);
  simd::force_backend(original);
}

TEST_CASE("unsupported backend is rejected") {
  for (auto b : {simd::Backend::kAvx2, simd::Backend::kNeon}) {
    if (!simd::backend_supported(b)) CHECK_THROWS_AS(simd::kernels_for(b), std::invalid_argument);
  }
  CHECK(simd::backend_supported(simd::Backend::kScalar));
}
