// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "oscilla/geometry.hpp"
#include "oscilla/sparse.hpp"

namespace oscilla {

struct W0Derivatives {
  double w0;
  double d1;
  double d2;
  double d3;
  double d4;
};

/// Solution of the 1D Neumann problem -r w0'' + w0 = f on (0,1),
/// w0'(0) = w0'(1) = 0, with derivative recovery up to fourth order.
///
/// The spectral representation (cosine sources) is exact term by term:
/// d_k = c_k / (1 + r (k pi)^2). The fem1d representation is a P1 solve on
/// a uniform grid, kept as an independent cross-check; its higher
/// derivatives come from the equation itself, never from repeated
/// numerical differentiation.
class HomogenizedSolution {
 public:
  enum class Representation { Spectral, Fem1d };

  static HomogenizedSolution spectral(const SourceFunction& f, double r);
  static HomogenizedSolution fem1d(const SourceFunction& f, double r,
                                   int elements, const CgOptions& opt = {});

  W0Derivatives eval(double x) const;  ///< rejects x outside [0,1]

  Representation representation() const { return repr_; }
  double r() const { return r_; }
  const std::vector<double>& spectral_coefficients() const { return data_; }
  const std::vector<double>& nodal_values() const { return data_; }

 private:
  HomogenizedSolution(Representation repr, SourceFunction f, double r,
                      std::vector<double> data);

  Representation repr_;
  SourceFunction source_;
  double r_;
  std::vector<double> data_;  // spectral coefficients or nodal values
};

/// Default path: spectral for cosine sources, fem1d otherwise.
HomogenizedSolution solve_w0(const SourceFunction& f, double r);

struct FhatResult {
  std::function<double(double)> fhat;  ///< fhat_eps(x1) = g(x1/eps) f(x1)
  SourceFunction f0;                   ///< weak limit of fhat / mean(g)
};

FhatResult compute_fhat_f0(const PeriodicProfile& profile, double eps,
                           const SourceFunction& f);

}  // namespace oscilla
