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

#include "labgrade/simd/kernels.hpp"

namespace labgrade::simd::detail {
namespace {

constexpr std::size_t kLanes = 8;

double fold(const double (&acc)[kLanes]) {
  double s[4];
  for (std::size_t j = 0; j < 4; ++j) s[j] = acc[j] + acc[j + 4];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc[kLanes] = {};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      const double p = a[i + j] * b[i + j];
      acc[j] = acc[j] + p;
    }
  }
  double total = fold(acc);
  for (; i < n; ++i) {
    const double p = a[i] * b[i];
    total = total + p;
  }
  return total;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc[kLanes] = {};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t j = 0; j < kLanes; ++j) acc[j] = acc[j] + x[i + j];
  }
  double total = fold(acc);
  for (; i < n; ++i) total = total + x[i];
  return total;
}

double sum_squares_scalar(const double* x, std::size_t n) { return dot_scalar(x, x, n); }

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
  double acc[kLanes] = {};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      const double d = a[i + j] - b[i + j];
      const double p = d * d;
      acc[j] = acc[j] + p;
    }
  }
  double total = fold(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    const double p = d * d;
    total = total + p;
  }
  return total;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p = alpha * x[i];
    y[i] = y[i] + p;
  }
}

void shift_scalar(const double* x, double c, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] - c;
}

}  // namespace

const KernelTable kScalarKernels = {
    dot_scalar, sum_scalar, sum_squares_scalar, squared_distance_scalar, axpy_scalar, shift_scalar,
};

}  // namespace labgrade::simd::detail
