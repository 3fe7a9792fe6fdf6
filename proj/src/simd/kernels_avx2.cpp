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

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#define LABGRADE_AVX2 __attribute__((target("avx2")))

namespace labgrade::simd::detail {
namespace {

// Lanes 0..3 live in lo, lanes 4..7 in hi.
LABGRADE_AVX2 inline double fold(__m256d lo, __m256d hi) {
  alignas(32) double s[4];
  _mm256_store_pd(s, _mm256_add_pd(lo, hi));
  return (s[0] + s[1]) + (s[2] + s[3]);
}

LABGRADE_AVX2 double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    lo = _mm256_add_pd(lo, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    hi = _mm256_add_pd(hi, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
  }
  double total = fold(lo, hi);
  for (; i < n; ++i) {
    const double p = a[i] * b[i];
    total = total + p;
  }
  return total;
}

LABGRADE_AVX2 double sum_avx2(const double* x, std::size_t n) {
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    lo = _mm256_add_pd(lo, _mm256_loadu_pd(x + i));
    hi = _mm256_add_pd(hi, _mm256_loadu_pd(x + i + 4));
  }
  double total = fold(lo, hi);
  for (; i < n; ++i) total = total + x[i];
  return total;
}

LABGRADE_AVX2 double sum_squares_avx2(const double* x, std::size_t n) { return dot_avx2(x, x, n); }

LABGRADE_AVX2 double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    lo = _mm256_add_pd(lo, _mm256_mul_pd(d0, d0));
    hi = _mm256_add_pd(hi, _mm256_mul_pd(d1, d1));
  }
  double total = fold(lo, hi);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    const double p = d * d;
    total = total + p;
  }
  return total;
}

LABGRADE_AVX2 void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), p));
  }
  for (; i < n; ++i) {
    const double p = alpha * x[i];
    y[i] = y[i] + p;
  }
}

LABGRADE_AVX2 void shift_avx2(const double* x, double c, double* y, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_sub_pd(_mm256_loadu_pd(x + i), vc));
  for (; i < n; ++i) y[i] = x[i] - c;
}

const KernelTable kAvx2Kernels = {
    dot_avx2, sum_avx2, sum_squares_avx2, squared_distance_avx2, axpy_avx2, shift_avx2,
};

}  // namespace

const KernelTable* avx2_kernels() { return &kAvx2Kernels; }

}  // namespace labgrade::simd::detail

#else

namespace labgrade::simd::detail {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace labgrade::simd::detail

#endif
