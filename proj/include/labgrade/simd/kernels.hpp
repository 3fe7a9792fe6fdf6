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

// Dense double-precision kernels used by the numeric inner loops (boosting
// residual updates, loss sums, correlation moments, vector norms).
//
// Every variant reduces in the same order: eight interleaved lane
// accumulators over blocks of eight, folded as
//   s[j] = acc[j] + acc[j + 4];  total = (s0 + s1) + (s2 + s3)
// and the tail is then added left to right. The scalar reference follows
// that order literally, so vector variants are bit-identical to it.

#include <cstddef>
#include <span>
#include <string_view>

namespace labgrade::simd {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view backend_name(Backend backend);

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y[i] = x[i] - c
  void (*shift)(const double* x, double c, double* y, std::size_t n);
};

bool backend_supported(Backend backend);

// Kernel table for a specific backend; throws std::invalid_argument when the
// backend is not available on this machine.
const KernelTable& kernels_for(Backend backend);

// Backend chosen at first use: the widest supported one, unless the
// LABGRADE_SIMD environment variable names "scalar", "avx2" or "neon".
Backend active_backend();

// Test hook: pins the backend used by the span wrappers below.
void force_backend(Backend backend);

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> x);
double sum_squares(std::span<const double> x);
double squared_distance(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void shift(std::span<const double> x, double c, std::span<double> y);

namespace detail {
extern const KernelTable kScalarKernels;
const KernelTable* avx2_kernels();  // nullptr when not compiled in
const KernelTable* neon_kernels();  // nullptr when not compiled in
}  // namespace detail

}  // namespace labgrade::simd
