// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

namespace oscilla::kernels::detail {

struct Vtable {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*aypx)(double, double*, const double*, std::size_t);
  void (*csr_spmv)(const int*, const int*, const double*, int, const double*,
                   double*);
};

extern const Vtable scalar_vtable;

#if defined(OSCILLA_HAVE_AVX2_TU)
extern const Vtable avx2_vtable;
#endif

}  // namespace oscilla::kernels::detail
