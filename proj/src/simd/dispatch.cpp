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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "labgrade/simd/kernels.hpp"

namespace labgrade::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend detect() {
  Backend best = Backend::kScalar;
  if (backend_supported(Backend::kAvx2)) {
    best = Backend::kAvx2;
  } else if (backend_supported(Backend::kNeon)) {
    best = Backend::kNeon;
  }
  if (const char* env = std::getenv("LABGRADE_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Backend::kScalar;
    if (want == "avx2" && backend_supported(Backend::kAvx2)) return Backend::kAvx2;
    if (want == "neon" && backend_supported(Backend::kNeon)) return Backend::kNeon;
  }
  return best;
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{&kernels_for(detect())};
  return table;
}

std::atomic<Backend>& active_tag() {
  static std::atomic<Backend> tag{detect()};
  return tag;
}

const KernelTable& table() { return *active_table().load(std::memory_order_relaxed); }

void check_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd kernel: length mismatch");
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return true;
    case Backend::kAvx2: return detail::avx2_kernels() != nullptr && cpu_has_avx2();
    case Backend::kNeon: return detail::neon_kernels() != nullptr;
  }
  return false;
}

const KernelTable& kernels_for(Backend backend) {
  if (!backend_supported(backend)) {
    throw std::invalid_argument("simd backend not supported: " + std::string(backend_name(backend)));
  }
  switch (backend) {
    case Backend::kAvx2: return *detail::avx2_kernels();
    case Backend::kNeon: return *detail::neon_kernels();
    case Backend::kScalar: break;
  }
  return detail::kScalarKernels;
}

Backend active_backend() { return active_tag().load(std::memory_order_relaxed); }

void force_backend(Backend backend) {
  active_table().store(&kernels_for(backend), std::memory_order_relaxed);
  active_tag().store(backend, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same_length(a.size(), b.size());
  return table().dot(a.data(), b.data(), a.size());
}

double sum(std::span<const double> x) { return table().sum(x.data(), x.size()); }

double sum_squares(std::span<const double> x) { return table().sum_squares(x.data(), x.size()); }

double squared_distance(std::span<const double> a, std::span<const double> b) {
  check_same_length(a.size(), b.size());
  return table().squared_distance(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_same_length(x.size(), y.size());
  table().axpy(alpha, x.data(), y.data(), x.size());
}

void shift(std::span<const double> x, double c, std::span<double> y) {
  check_same_length(x.size(), y.size());
  table().shift(x.data(), c, y.data(), x.size());
}

}  // namespace labgrade::simd
