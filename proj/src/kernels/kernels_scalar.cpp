// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference kernels. These define the accumulation contract the
// vector backends must reproduce bit-for-bit: four independent partial
// sums over lanes i%4, reduced as (s0+s2)+(s1+s3), then an in-order tail.

#include "kernels_internal.hpp"

namespace oscilla::kernels::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  double sum = (s0 + s2) + (s1 + s3);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void aypx_scalar(double alpha, double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * y[i] + x[i];
}

void csr_spmv_scalar(const int* row_offsets, const int* cols,
                     const double* values, int n_rows, const double* x,
                     double* y) {
  for (int r = 0; r < n_rows; ++r) {
    const int rb = row_offsets[r];
    const int re = row_offsets[r + 1];
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    int j = rb;
    for (; j + 4 <= re; j += 4) {
      s0 += values[j] * x[cols[j]];
      s1 += values[j + 1] * x[cols[j + 1]];
      s2 += values[j + 2] * x[cols[j + 2]];
      s3 += values[j + 3] * x[cols[j + 3]];
    }
    double sum = (s0 + s2) + (s1 + s3);
    for (; j < re; ++j) sum += values[j] * x[cols[j]];
    y[r] = sum;
  }
}

}  // namespace

const Vtable scalar_vtable = {dot_scalar, axpy_scalar, aypx_scalar,
                              csr_spmv_scalar};

}  // namespace oscilla::kernels::detail
