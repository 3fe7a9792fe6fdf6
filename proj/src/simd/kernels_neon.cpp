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

#if defined(__aarch64__)
#include <arm_neon.h>

namespace labgrade::simd::detail {
namespace {

// Eight lanes in four float64x2 registers: r0 = {0,1}, r1 = {2,3},
// r2 = {4,5}, r3 = {6,7}.
inline double fold(float64x2_t r0, float64x2_t r1, float64x2_t r2, float64x2_t r3) {
  const float64x2_t s01 = vaddq_f64(r0, r2);
  const float64x2_t s23 = vaddq_f64(r1, r3);
  return (vgetq_lane_f64(s01, 0) + vgetq_lane_f64(s01, 1)) +
         (vgetq_lane_f64(s23, 0) + vgetq_lane_f64(s23, 1));
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t r0 = vdupq_n_f64(0.0), r1 = r0, r2 = r0, r3 = r0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    r0 = vaddq_f64(r0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    r1 = vaddq_f64(r1, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    r2 = vaddq_f64(r2, vmulq_f64(vld1q_f64(a + i + 4), vld1q_f64(b + i + 4)));
    r3 = vaddq_f64(r3, vmulq_f64(vld1q_f64(a + i + 6), vld1q_f64(b + i + 6)));
  }
  double total = fold(r0, r1, r2, r3);
  for (; i < n; ++i) {
    const double p = a[i] * b[i];
    total = total + p;
  }
  return total;
}

double sum_neon(const double* x, std::size_t n) {
  float64x2_t r0 = vdupq_n_f64(0.0), r1 = r0, r2 = r0, r3 = r0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    r0 = vaddq_f64(r0, vld1q_f64(x + i));
    r1 = vaddq_f64(r1, vld1q_f64(x + i + 2));
    r2 = vaddq_f64(r2, vld1q_f64(x + i + 4));
    r3 = vaddq_f64(r3, vld1q_f64(x + i + 6));
  }
  double total = fold(r0, r1, r2, r3);
  for (; i < n; ++i) total = total + x[i];
  return total;
}

double sum_squares_neon(const double* x, std::size_t n) { return dot_neon(x, x, n); }

double squared_distance_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t r[4] = {vdupq_n_f64(0.0), vdupq_n_f64(0.0), vdupq_n_f64(0.0), vdupq_n_f64(0.0)};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (int j = 0; j < 4; ++j) {
      const float64x2_t d = vsubq_f64(vld1q_f64(a + i + 2 * j), vld1q_f64(b + i + 2 * j));
      r[j] = vaddq_f64(r[j], vmulq_f64(d, d));
    }
  }
  double total = fold(r[0], r[1], r[2], r[3]);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    const double p = d * d;
    total = total + p;
  }
  return total;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  for (; i < n; ++i) {
    const double p = alpha * x[i];
    y[i] = y[i] + p;
  }
}

void shift_neon(const double* x, double c, double* y, std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vsubq_f64(vld1q_f64(x + i), vc));
  for (; i < n; ++i) y[i] = x[i] - c;
}

const KernelTable kNeonKernels = {
    dot_neon, sum_neon, sum_squares_neon, squared_distance_neon, axpy_neon, shift_neon,
};

}  // namespace

const KernelTable* neon_kernels() { return &kNeonKernels; }

}  // namespace labgrade::simd::detail

#else

namespace labgrade::simd::detail {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace labgrade::simd::detail

#endif
