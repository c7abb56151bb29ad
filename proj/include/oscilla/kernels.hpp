// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

namespace oscilla::kernels {

/// Vector/CSR arithmetic backends. All backends compute bit-identical
/// results: they share one accumulation contract (4-lane blocked partial
/// sums, pairwise (0+2)+(1+3) reduction, in-order tail, no FMA), so the
/// runtime dispatch never changes numerical output.
enum class Backend { Scalar, Avx2 };

bool avx2_supported();
Backend active_backend();

/// Select a backend explicitly (tests, benchmarking). Throws
/// std::invalid_argument if the backend is not supported on this CPU.
void set_backend(Backend b);

double dot(const double* a, const double* b, std::size_t n);

/// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// y = alpha * y + x
void aypx(double alpha, double* y, const double* x, std::size_t n);

/// y = A x for CSR (row_offsets of size n_rows+1, column-sorted rows).
void csr_spmv(const int* row_offsets, const int* cols, const double* values,
              int n_rows, const double* x, double* y);

}  // namespace oscilla::kernels
