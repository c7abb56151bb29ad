// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include "oscilla/homogenized.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oscilla {

HomogenizedSolution::HomogenizedSolution(Representation repr, SourceFunction f,
                                         double r, std::vector<double> data)
    : repr_(repr), source_(std::move(f)), r_(r), data_(std::move(data)) {}

HomogenizedSolution HomogenizedSolution::spectral(const SourceFunction& f,
                                                  double r) {
  if (!(r > 0.0))
    throw std::invalid_argument("HomogenizedSolution: r must be positive");
  if (!f.is_cosine())
    throw std::invalid_argument(
        "HomogenizedSolution::spectral: needs a cosine-polynomial source");
  std::vector<double> d(f.coefficients().size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double kp = static_cast<double>(k) * std::numbers::pi;
    d[k] = f.coefficients()[k] / (1.0 + r * kp * kp);
  }
  return HomogenizedSolution(Representation::Spectral, f, r, std::move(d));
}

HomogenizedSolution HomogenizedSolution::fem1d(const SourceFunction& f,
                                               double r, int elements,
                                               const CgOptions& opt) {
  if (!(r > 0.0))
    throw std::invalid_argument("HomogenizedSolution: r must be positive");
  if (elements < 2)
    throw std::invalid_argument("HomogenizedSolution::fem1d: too few elements");

  const int n = elements + 1;
  const double h = 1.0 / static_cast<double>(elements);

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(elements) * 4);
  std::vector<double> load(static_cast<std::size_t>(n), 0.0);

  // two-point Gauss per element (degree-3 exact) for the load
  const double gauss_offset = 0.5 / std::numbers::sqrt3;
  for (int e = 0; e < elements; ++e) {
    const double k = r / h;
    const double m = h / 6.0;
    triplets.push_back({e, e, k + 2.0 * m});
    triplets.push_back({e, e + 1, -k + m});
    triplets.push_back({e + 1, e, -k + m});
    triplets.push_back({e + 1, e + 1, k + 2.0 * m});

    const double x_left = static_cast<double>(e) * h;
    for (const double s : {0.5 - gauss_offset, 0.5 + gauss_offset}) {
      const double x = x_left + s * h;
      const double fx = f.eval(x).f;
      load[static_cast<std::size_t>(e)] += 0.5 * h * fx * (1.0 - s);
      load[static_cast<std::size_t>(e) + 1] += 0.5 * h * fx * s;
    }
  }

  const CsrMatrix system =
      CsrMatrix::from_triplets(n, triplets);
  CgOptions o = opt;
  o.tol = std::min(o.tol, 1e-12);
  CgResult res = cg_solve(system, load, o);
  if (!res.report.converged)
    throw std::runtime_error("HomogenizedSolution::fem1d: CG did not converge");
  return HomogenizedSolution(Representation::Fem1d, f, r, std::move(res.x));
}

W0Derivatives HomogenizedSolution::eval(double x) const {
  constexpr double slack = 1e-12;
  if (x < -slack || x > 1.0 + slack)
    throw std::domain_error("HomogenizedSolution: x outside [0,1]");
  x = std::min(std::max(x, 0.0), 1.0);

  if (repr_ == Representation::Spectral) {
    W0Derivatives v{0.0, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < data_.size(); ++k) {
      const double kp = static_cast<double>(k) * std::numbers::pi;
      const double c = std::cos(kp * x);
      const double s = std::sin(kp * x);
      v.w0 += data_[k] * c;
      v.d1 -= data_[k] * kp * s;
      v.d2 -= data_[k] * kp * kp * c;
      v.d3 += data_[k] * kp * kp * kp * s;
      v.d4 += data_[k] * kp * kp * kp * kp * c;
    }
    return v;
  }

  const std::size_t elements = data_.size() - 1;
  const double h = 1.0 / static_cast<double>(elements);
  const std::size_t i =
      std::min(static_cast<std::size_t>(x / h), elements - 1);
  const double t = (x - static_cast<double>(i) * h) / h;

  const SourceValues f = source_.eval(x);
  W0Derivatives v;
  v.w0 = (1.0 - t) * data_[i] + t * data_[i + 1];
  v.d1 = (data_[i + 1] - data_[i]) / h;  // elementwise slope
  // recovery through the equation: r w0'' = w0 - f, differentiated
  v.d2 = (v.w0 - f.f) / r_;
  v.d3 = (v.d1 - f.df) / r_;
  v.d4 = (v.d2 - f.d2f) / r_;
  return v;
}

HomogenizedSolution solve_w0(const SourceFunction& f, double r) {
  if (f.is_cosine()) return HomogenizedSolution::spectral(f, r);
  return HomogenizedSolution::fem1d(f, r, 1024);
}

FhatResult compute_fhat_f0(const PeriodicProfile& profile, double eps,
                           const SourceFunction& f) {
  if (!(eps > 0.0))
    throw std::invalid_argument("compute_fhat_f0: eps must be positive");
  auto fhat = [profile, eps, f](double x1) {
    return profile(x1 / eps) * f.eval(x1).f;
  };
  return {std::move(fhat), f};
}

}  // namespace oscilla
