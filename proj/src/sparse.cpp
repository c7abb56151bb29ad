// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include "oscilla/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oscilla/kernels.hpp"

namespace oscilla {

CsrMatrix CsrMatrix::from_triplets(int n, const std::vector<Triplet>& entries) {
  if (n < 0) throw std::invalid_argument("CsrMatrix: negative dimension");
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw std::invalid_argument("CsrMatrix: triplet index out of range");
  }

  std::vector<int> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  // stable sort keeps insertion order within equal (row, col), so duplicate
  // summation is deterministic.
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (entries[i].row != entries[j].row) return entries[i].row < entries[j].row;
    return entries[i].col < entries[j].col;
  });

  CsrMatrix m;
  m.n_ = n;
  m.row_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  m.cols_.reserve(entries.size());
  m.values_.reserve(entries.size());

  std::size_t k = 0;
  while (k < order.size()) {
    const Triplet& first = entries[order[k]];
    double sum = first.value;
    std::size_t j = k + 1;
    while (j < order.size() && entries[order[j]].row == first.row &&
           entries[order[j]].col == first.col) {
      sum += entries[order[j]].value;
      ++j;
    }
    m.cols_.push_back(first.col);
    m.values_.push_back(sum);
    m.row_offsets_[static_cast<std::size_t>(first.row) + 1] += 1;
    k = j;
  }
  for (int r = 0; r < n; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];
  return m;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw std::invalid_argument("CsrMatrix::multiply: dimension mismatch");
  kernels::csr_spmv(row_offsets_.data(), cols_.data(), values_.data(), n_,
                    x.data(), y.data());
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(n_));
  multiply(x, y);
  return y;
}

double CsrMatrix::quadratic_form(std::span<const double> x) const {
  const std::vector<double> ax = multiply(x);
  return kernels::dot(x.data(), ax.data(), x.size());
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(n_), 0.0);
  for (int r = 0; r < n_; ++r) {
    for (int j = row_offsets_[r]; j < row_offsets_[r + 1]; ++j) {
      if (cols_[j] == r) d[static_cast<std::size_t>(r)] = values_[j];
    }
  }
  return d;
}

CsrMatrix csr_sum(const CsrMatrix& a, const CsrMatrix& b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("csr_sum: dimension mismatch");
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nnz() + b.nnz()));
  const auto push = [&t](const CsrMatrix& m) {
    const auto ro = m.row_offsets();
    const auto c = m.cols();
    const auto v = m.values();
    for (int r = 0; r < m.rows(); ++r)
      for (int j = ro[r]; j < ro[r + 1]; ++j) t.push_back({r, c[j], v[j]});
  };
  push(a);
  push(b);
  return CsrMatrix::from_triplets(a.rows(), t);
}

namespace {

double norm2(std::span<const double> v) {
  return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

void subtract_mean(std::span<double> v) {
  const double m = mean(v);
  for (double& x : v) x -= m;
}

struct CgWorkspace {
  std::vector<double> r, z, p, ap;
};

/// Shared PCG loop. When `deflate` is set, iterates and residuals are kept
/// orthogonal to the constant vector.
CgResult run_cg(const CsrMatrix& a, std::span<const double> b,
                const CgOptions& opt, bool deflate) {
  const std::size_t n = b.size();
  if (static_cast<int>(n) != a.rows())
    throw std::invalid_argument("cg_solve: dimension mismatch");
  if (!(opt.tol > 0.0 && opt.tol < 1.0))
    throw std::invalid_argument("cg_solve: tol must lie in (0,1)");

  CgResult res;
  res.x.assign(n, 0.0);

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    res.report = {0, 0.0, true, false};
    return res;
  }

  std::vector<double> inv_diag;
  if (opt.jacobi) {
    inv_diag = a.diagonal();
    for (double& d : inv_diag) {
      if (d <= 0.0)
        throw std::invalid_argument("cg_solve: non-positive diagonal with Jacobi");
      d = 1.0 / d;
    }
  }
  const auto precondition = [&](const std::vector<double>& r,
                                std::vector<double>& z) {
    if (opt.jacobi) {
      for (std::size_t i = 0; i < r.size(); ++i) z[i] = inv_diag[i] * r[i];
    } else {
      z = r;
    }
    if (deflate) subtract_mean(z);
  };

  CgWorkspace w;
  w.r.assign(b.begin(), b.end());
  if (deflate) subtract_mean(w.r);
  w.z.assign(n, 0.0);
  w.ap.assign(n, 0.0);

  precondition(w.r, w.z);
  w.p = w.z;
  double rz = kernels::dot(w.r.data(), w.z.data(), n);

  int it = 0;
  bool stagnated = false;
  while (it < opt.max_iterations && !stagnated) {
    bool recurrence_hit = false;
    for (; it < opt.max_iterations; ) {
      ++it;
      a.multiply(w.p, w.ap);
      const double pap = kernels::dot(w.p.data(), w.ap.data(), n);
      if (!(pap > 0.0)) {
        stagnated = true;  // exhausted (or non-SPD input); verify below
        break;
      }
      const double alpha = rz / pap;
      kernels::axpy(alpha, w.p.data(), res.x.data(), n);
      kernels::axpy(-alpha, w.ap.data(), w.r.data(), n);
      if (deflate) {
        subtract_mean(w.r);
        subtract_mean(res.x);
      }
      if (norm2(w.r) <= opt.tol * bnorm) {
        recurrence_hit = true;
        break;
      }
      precondition(w.r, w.z);
      const double rz_next = kernels::dot(w.r.data(), w.z.data(), n);
      kernels::aypx(rz_next / rz, w.p.data(), w.z.data(), n);
      rz = rz_next;
    }

    // Recompute the true residual; restart if the recurrence drifted.
    a.multiply(res.x, w.r);
    for (std::size_t i = 0; i < n; ++i) w.r[i] = b[i] - w.r[i];
    if (deflate) subtract_mean(w.r);
    const double true_res = norm2(w.r);
    if (true_res <= opt.tol * bnorm) {
      res.report.converged = true;
      break;
    }
    if (!recurrence_hit && it >= opt.max_iterations) break;
    if (stagnated) break;
    precondition(w.r, w.z);
    w.p = w.z;
    rz = kernels::dot(w.r.data(), w.z.data(), n);
  }

  if (deflate) subtract_mean(res.x);
  // authoritative residual, from scratch
  a.multiply(res.x, w.ap);
  for (std::size_t i = 0; i < n; ++i) w.ap[i] = b[i] - w.ap[i];
  if (deflate) subtract_mean(w.ap);
  res.report.iterations = it;
  res.report.relative_residual = norm2(w.ap) / bnorm;
  res.report.converged = res.report.relative_residual <= opt.tol;
  return res;
}

}  // namespace

CgResult cg_solve(const CsrMatrix& a, std::span<const double> b,
                  const CgOptions& opt) {
  return run_cg(a, b, opt, /*deflate=*/false);
}

CgResult cg_solve_singular(const CsrMatrix& a, std::span<const double> b,
                           const CgOptions& opt) {
  const std::size_t n = b.size();
  if (static_cast<int>(n) != a.rows())
    throw std::invalid_argument("cg_solve_singular: dimension mismatch");

  const double bnorm = norm2(b);
  std::vector<double> b_proj(b.begin(), b.end());
  subtract_mean(b_proj);
  const double pnorm = norm2(b_proj);

  bool warn = false;
  if (bnorm > 0.0) {
    // ||b - b_proj|| = |mean(b)| * sqrt(n)
    const double defect = std::abs(mean(b)) * std::sqrt(static_cast<double>(n));
    warn = defect / bnorm > 1e-8;
  }

  if (pnorm == 0.0) {
    CgResult res;
    res.x.assign(n, 0.0);
    res.report = {0, 0.0, true, warn};
    return res;
  }

  CgResult res = run_cg(a, b_proj, opt, /*deflate=*/true);
  res.report.compatibility_warning = warn;
  return res;
}

}  // namespace oscilla
