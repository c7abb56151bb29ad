// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "oscilla/sparse.hpp"

using oscilla::CgOptions;
using oscilla::CsrMatrix;
using oscilla::Triplet;

namespace {

/// Dense Gaussian elimination with partial pivoting; the direct-solve
/// oracle. Independent of the CG path.
std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
    std::swap(a[k], a[pivot]);
    std::swap(b[k], b[pivot]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= factor * a[k][j];
      b[i] -= factor * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

TEST_CASE("from_triplets sums duplicates and sorts columns") {
  const auto a = CsrMatrix::from_triplets(2, {{0, 0, 1.0}, {0, 0, 1.0}});
  CHECK(a.nnz() == 1);
  CHECK(a.values()[0] == 2.0);

  const auto zero = CsrMatrix::from_triplets(3, {});
  const std::vector<double> v{1.0, -2.0, 3.0};
  for (double y : zero.multiply(v)) CHECK(y == 0.0);

  const auto eye = CsrMatrix::from_triplets(2, {{0, 0, 1.0}, {1, 1, 1.0}});
  const std::vector<double> b{4.0, -7.0};
  const auto y = eye.multiply(b);
  CHECK(y[0] == 4.0);
  CHECK(y[1] == -7.0);

  CHECK_THROWS_AS(CsrMatrix::from_triplets(2, {{0, 2, 1.0}}),
                  std::invalid_argument);

  // columns sorted within each row
  const auto m = CsrMatrix::from_triplets(
      2, {{0, 1, 5.0}, {0, 0, 2.0}, {1, 0, 3.0}, {1, 1, 7.0}});
  CHECK(m.cols()[0] == 0);
  CHECK(m.cols()[1] == 1);
}

TEST_CASE("cg solves the identity in one iteration") {
  const auto eye = CsrMatrix::from_triplets(3, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}});
  const std::vector<double> b{0.5, -2.0, 3.25};
  const auto res = oscilla::cg_solve(eye, b);
  CHECK(res.report.converged);
  CHECK(res.report.iterations == 1);
  for (std::size_t i = 0; i < b.size(); ++i)
    CHECK(res.x[i] == doctest::Approx(b[i]).epsilon(1e-14));
}

TEST_CASE("cg solves a 2x2 system") {
  const auto a = CsrMatrix::from_triplets(
      2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
  const std::vector<double> b{3.0, 3.0};
  const auto res = oscilla::cg_solve(a, b);
  CHECK(res.report.converged);
  CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cg reports non-convergence when starved of iterations") {
  std::vector<Triplet> t;
  const int n = 50;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0 + 1e-3 * i});
    if (i + 1 < n) {
      t.push_back({i, i + 1, -1.0});
      t.push_back({i + 1, i, -1.0});
    }
  }
  const auto a = CsrMatrix::from_triplets(n, t);
  std::vector<double> b(static_cast<std::size_t>(n), 1.0);
  CgOptions opt;
  opt.max_iterations = 1;
  const auto res = oscilla::cg_solve(a, b, opt);
  CHECK_FALSE(res.report.converged);
  CHECK(res.report.iterations == 1);
  CHECK(res.report.relative_residual > opt.tol);
}

TEST_CASE("cg matches the dense direct-solve oracle on random SPD systems") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (const int n : {5, 20, 50}) {
    // random symmetric diagonally dominant matrix
    std::vector<std::vector<double>> dense(
        static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    std::vector<Triplet> triplets;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double v = dist(rng);
        dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        dense[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        triplets.push_back({i, j, v});
        triplets.push_back({j, i, v});
      }
    }
    for (int i = 0; i < n; ++i) {
      double row_sum = 0.0;
      for (int j = 0; j < n; ++j)
        row_sum += std::abs(dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      const double d = row_sum + 1.0;
      dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = d;
      triplets.push_back({i, i, d});
    }

    std::vector<double> b(static_cast<std::size_t>(n));
    for (double& v : b) v = dist(rng);

    const auto a = CsrMatrix::from_triplets(n, triplets);
    const auto res = oscilla::cg_solve(a, b, CgOptions{1e-12, 10000, false});
    CHECK(res.report.converged);

    const auto x_ref = dense_solve(dense, b);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      num += (res.x[k] - x_ref[k]) * (res.x[k] - x_ref[k]);
      den += x_ref[k] * x_ref[k];
    }
    CHECK(std::sqrt(num / den) < 1e-8);
  }
}

TEST_CASE("singular cg solves the hand-checked 3x3 graph Laplacian") {
  const auto a = CsrMatrix::from_triplets(
      3, {{0, 0, 2.0}, {0, 1, -1.0}, {0, 2, -1.0},
          {1, 0, -1.0}, {1, 1, 2.0}, {1, 2, -1.0},
          {2, 0, -1.0}, {2, 1, -1.0}, {2, 2, 2.0}});
  const std::vector<double> b{1.0, -1.0, 0.0};
  const auto res = oscilla::cg_solve_singular(a, b);
  CHECK(res.report.converged);
  CHECK_FALSE(res.report.compatibility_warning);
  CHECK(res.x[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(res.x[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
  CHECK(res.x[2] == doctest::Approx(0.0).epsilon(1e-10));

  // verify A x = b and mean-zero directly
  const auto ax = a.multiply(res.x);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(ax[i] == doctest::Approx(b[i]).epsilon(1e-9));
  CHECK(res.x[0] + res.x[1] + res.x[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("singular cg flags incompatible right sides") {
  const auto a = CsrMatrix::from_triplets(
      2, {{0, 0, 1.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 1.0}});
  const std::vector<double> b{2.0, 2.0};  // constant: b_proj = 0
  const auto res = oscilla::cg_solve_singular(a, b);
  CHECK(res.report.converged);
  CHECK(res.report.compatibility_warning);
  CHECK(res.x[0] == 0.0);
  CHECK(res.x[1] == 0.0);
}

TEST_CASE("singular cg output is orthogonal to constants") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 24;
  // ring Laplacian plus random mean-zero load
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    t.push_back({i, i, 2.0});
    t.push_back({i, j, -1.0});
    t.push_back({j, i, -1.0});
  }
  const auto a = CsrMatrix::from_triplets(n, t);
  std::vector<double> b(static_cast<std::size_t>(n));
  for (double& v : b) v = dist(rng);
  double mean = 0.0;
  for (double v : b) mean += v;
  mean /= n;
  for (double& v : b) v -= mean;

  const auto res = oscilla::cg_solve_singular(a, b, CgOptions{1e-12, 10000, true});
  CHECK(res.report.converged);
  double sum = 0.0;
  for (double v : res.x) sum += v;
  CHECK(std::abs(sum / n) < 1e-12);
}

TEST_CASE("cg rejects dimension mismatches and bad tolerances") {
  const auto a = CsrMatrix::from_triplets(2, {{0, 0, 1.0}, {1, 1, 1.0}});
  const std::vector<double> b{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(oscilla::cg_solve(a, b), std::invalid_argument);
  const std::vector<double> b2{1.0, 2.0};
  CHECK_THROWS_AS(oscilla::cg_solve(a, b2, CgOptions{2.0, 10, false}),
                  std::invalid_argument);
}
