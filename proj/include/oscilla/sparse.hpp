// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace oscilla {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed sparse row matrix with sorted, duplicate-free columns per row.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Builds from (row, col, value) entries; duplicates are summed.
  /// Throws std::invalid_argument on out-of-range indices.
  static CsrMatrix from_triplets(int n, const std::vector<Triplet>& entries);

  int rows() const { return n_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  /// y = A x. Throws std::invalid_argument on dimension mismatch.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  /// x' A x
  double quadratic_form(std::span<const double> x) const;

  std::vector<double> diagonal() const;

  std::span<const int> row_offsets() const { return row_offsets_; }
  std::span<const int> cols() const { return cols_; }
  std::span<const double> values() const { return values_; }

 private:
  int n_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
};

/// A + B for same-dimension CSR matrices.
CsrMatrix csr_sum(const CsrMatrix& a, const CsrMatrix& b);

struct SolveReport {
  int iterations = 0;
  /// ||b - A x|| / ||b||, recomputed from scratch at exit.
  double relative_residual = 0.0;
  bool converged = false;
  /// Set by cg_solve_singular when the right side violates the
  /// compatibility condition (||b - b_proj|| / ||b|| > 1e-8).
  bool compatibility_warning = false;
};

struct CgOptions {
  double tol = 1e-10;  ///< relative residual target, in (0,1)
  int max_iterations = 200000;
  bool jacobi = false;  ///< diagonal preconditioning
};

struct CgResult {
  std::vector<double> x;
  SolveReport report;
};

/// Conjugate gradients for symmetric positive definite A.
/// Non-convergence is reported via report.converged = false.
CgResult cg_solve(const CsrMatrix& a, std::span<const double> b,
                  const CgOptions& opt = {});

/// Deflated conjugate gradients for symmetric positive semidefinite A whose
/// kernel is the constant vector. The right side is projected onto mean-zero
/// (compatibility projection), iterates are re-projected every iteration,
/// and the returned x has zero arithmetic mean.
CgResult cg_solve_singular(const CsrMatrix& a, std::span<const double> b,
                           const CgOptions& opt = {});

}  // namespace oscilla
