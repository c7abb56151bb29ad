// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "oscilla/cell.hpp"
#include "oscilla/homogenized.hpp"

namespace oscilla {

/// First- or second-order truncation on the thin domain,
///   W1 = w0(x1) - eps X(x1/eps, x2/eps) w0'(x1)
///   W2 = W1 + eps^2 theta(x1/eps, x2/eps) w0''(x1),
/// evaluated semi-analytically: exact in x1, P1-interpolated in the cell.
class TruncationField {
 public:
  TruncationField(int order, const CellSolutions& cell,
                  const HomogenizedSolution& w0, const PeriodicProfile& profile,
                  double eps);

  int order() const { return order_; }
  double eps() const { return eps_; }

  /// Value at a thin-domain point (locates the cell triangle).
  double value(double x1, double x2) const;

  /// Gradient via the two-scale chain rule; the point must lie strictly
  /// inside one cell-triangle image (cell gradients are piecewise constant).
  Vec2 gradient(double x1, double x2) const;

  struct CorrectorTerms {
    double kappa;  ///< W1 - w0
    double mu;     ///< W2 - w0
  };
  CorrectorTerms corrector_terms(double x1, double x2) const;

  /// Fast paths for integration when the containing cell triangle is known.
  double value_in_tri(int cell_tri, double x1, double x2) const;
  Vec2 gradient_in_tri(int cell_tri, double x1, double x2) const;

 private:
  double combine_value(int tri, const std::array<double, 3>& bary,
                       double x1) const;

  int order_;
  const CellSolutions& cell_;
  const HomogenizedSolution& w0_;
  const PeriodicProfile& profile_;
  double eps_;
  std::vector<Vec2> grad_x_;      // per cell triangle
  std::vector<Vec2> grad_theta_;  // per cell triangle (order 2)
};

/// Maps a thin-mesh triangle to the cell-mesh triangle it is the eps-scaled
/// image of (same m and n).
int cell_triangle_for_thin_triangle(const TriMesh& thin, const TriMesh& cell,
                                    int thin_tri);

/// Verifies that the thin mesh's columns are the eps-scaled images of the
/// cell mesh's columns; throws std::runtime_error otherwise.
void assert_cell_alignment(const TriMesh& thin, const TriMesh& cell,
                           double eps);

}  // namespace oscilla
