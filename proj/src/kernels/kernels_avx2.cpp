// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0
//
// AVX2 kernels. Compiled with -mavx2 in its own TU; only reachable
// through the dispatcher after a runtime CPU check. Mirrors the scalar
// reference lane-for-lane (mul+add, no FMA) so results are bit-identical.

#if defined(OSCILLA_HAVE_AVX2_TU)

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace oscilla::kernels::detail {
namespace {

inline double reduce_lanes(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);     // [s0, s1]
  const __m128d hi = _mm256_extractf128_pd(acc, 1);   // [s2, s3]
  const __m128d s = _mm_add_pd(lo, hi);               // [s0+s2, s1+s3]
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
  }
  double sum = reduce_lanes(acc);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void aypx_avx2(double alpha, double* y, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(va, vy), vx));
  }
  for (; i < n; ++i) y[i] = alpha * y[i] + x[i];
}

void csr_spmv_avx2(const int* row_offsets, const int* cols,
                   const double* values, int n_rows, const double* x,
                   double* y) {
  for (int r = 0; r < n_rows; ++r) {
    const int rb = row_offsets[r];
    const int re = row_offsets[r + 1];
    __m256d acc = _mm256_setzero_pd();
    int j = rb;
    for (; j + 4 <= re; j += 4) {
      const __m256d vv = _mm256_loadu_pd(values + j);
      const __m256d vx = _mm256_set_pd(x[cols[j + 3]], x[cols[j + 2]],
                                       x[cols[j + 1]], x[cols[j]]);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(vv, vx));
    }
    double sum = reduce_lanes(acc);
    for (; j < re; ++j) sum += values[j] * x[cols[j]];
    y[r] = sum;
  }
}

}  // namespace

const Vtable avx2_vtable = {dot_avx2, axpy_avx2, aypx_avx2, csr_spmv_avx2};

}  // namespace oscilla::kernels::detail

#endif  // OSCILLA_HAVE_AVX2_TU
