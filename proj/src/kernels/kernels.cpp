// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include "oscilla/kernels.hpp"

#include <stdexcept>

#include "kernels_internal.hpp"

namespace oscilla::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(OSCILLA_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

struct Dispatch {
  const detail::Vtable* table;
  Backend backend;
  Dispatch() {
#if defined(OSCILLA_HAVE_AVX2_TU)
    if (cpu_has_avx2()) {
      table = &detail::avx2_vtable;
      backend = Backend::Avx2;
      return;
    }
#endif
    table = &detail::scalar_vtable;
    backend = Backend::Scalar;
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

bool avx2_supported() { return cpu_has_avx2(); }

Backend active_backend() { return dispatch().backend; }

void set_backend(Backend b) {
  if (b == Backend::Scalar) {
    dispatch().table = &detail::scalar_vtable;
    dispatch().backend = Backend::Scalar;
    return;
  }
#if defined(OSCILLA_HAVE_AVX2_TU)
  if (b == Backend::Avx2 && cpu_has_avx2()) {
    dispatch().table = &detail::avx2_vtable;
    dispatch().backend = Backend::Avx2;
    return;
  }
#endif
  throw std::invalid_argument("kernels: requested backend not supported on this CPU");
}

double dot(const double* a, const double* b, std::size_t n) {
  return dispatch().table->dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  dispatch().table->axpy(alpha, x, y, n);
}

void aypx(double alpha, double* y, const double* x, std::size_t n) {
  dispatch().table->aypx(alpha, y, x, n);
}

void csr_spmv(const int* row_offsets, const int* cols, const double* values,
              int n_rows, const double* x, double* y) {
  dispatch().table->csr_spmv(row_offsets, cols, values, n_rows, x, y);
}

}  // namespace oscilla::kernels
