// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include "oscilla/correctors.hpp"

#include <cmath>
#include <stdexcept>

namespace oscilla {
namespace {

std::array<double, 3> barycentric_in(const TriMesh& mesh, int t, double x,
                                     double y) {
  const auto p = mesh.tri_coords(t);
  const double det = (p[1].x - p[0].x) * (p[2].y - p[0].y) -
                     (p[1].y - p[0].y) * (p[2].x - p[0].x);
  const double b1 =
      ((x - p[0].x) * (p[2].y - p[0].y) - (y - p[0].y) * (p[2].x - p[0].x)) /
      det;
  const double b2 =
      ((p[1].x - p[0].x) * (y - p[0].y) - (p[1].y - p[0].y) * (x - p[0].x)) /
      det;
  return {1.0 - b1 - b2, b1, b2};
}

double interpolate(const TriMesh& mesh, const std::vector<double>& nodal,
                   int t, const std::array<double, 3>& bary) {
  const auto& tri = mesh.tris[static_cast<std::size_t>(t)];
  return bary[0] * nodal[static_cast<std::size_t>(tri[0])] +
         bary[1] * nodal[static_cast<std::size_t>(tri[1])] +
         bary[2] * nodal[static_cast<std::size_t>(tri[2])];
}

/// The mod-reduction wraps points on the right lateral edge to y = 0; when
/// the containing triangle is pinned, shift such points back into its
/// column before interpolating.
double shift_into_column(const TriMesh& mesh, int tri, double y) {
  const int col = (tri / 2) / mesh.layers;
  const double lo = mesh.col_x[static_cast<std::size_t>(col)];
  const double hi = mesh.col_x[static_cast<std::size_t>(col) + 1];
  const double period = mesh.col_x.back() - mesh.col_x.front();
  const double half = 0.5 * mesh.dx;
  if (y < lo - half) return y + period;
  if (y > hi + half) return y - period;
  return y;
}

}  // namespace

TruncationField::TruncationField(int order, const CellSolutions& cell,
                                 const HomogenizedSolution& w0,
                                 const PeriodicProfile& profile, double eps)
    : order_(order), cell_(cell), w0_(w0), profile_(profile), eps_(eps) {
  if (order_ != 1 && order_ != 2)
    throw std::invalid_argument("TruncationField: order must be 1 or 2");
  if (!(eps_ > 0.0))
    throw std::invalid_argument("TruncationField: eps must be positive");
  if (order_ == 2 && cell_.theta_field.empty())
    throw std::invalid_argument("TruncationField: order 2 requires theta");

  const TriMesh& mesh = cell_.cell.mesh;
  const double periods = 1.0 / (eps_ * profile_.period());
  if (std::abs(periods - std::round(periods)) > 1e-9 * periods)
    throw std::invalid_argument(
        "TruncationField: eps does not give whole periods");

  grad_x_.resize(static_cast<std::size_t>(mesh.tri_count()));
  for (int t = 0; t < mesh.tri_count(); ++t)
    grad_x_[static_cast<std::size_t>(t)] = p1_gradient(mesh, cell_.x_field, t);
  if (order_ == 2) {
    grad_theta_.resize(static_cast<std::size_t>(mesh.tri_count()));
    for (int t = 0; t < mesh.tri_count(); ++t)
      grad_theta_[static_cast<std::size_t>(t)] =
          p1_gradient(mesh, cell_.theta_field, t);
  }
}

double TruncationField::combine_value(int tri, const std::array<double, 3>& bary,
                                      double x1) const {
  const TriMesh& mesh = cell_.cell.mesh;
  const W0Derivatives w = w0_.eval(x1);
  const double x_val = interpolate(mesh, cell_.x_field, tri, bary);
  double value = w.w0 - eps_ * x_val * w.d1;
  if (order_ == 2) {
    const double theta_val = interpolate(mesh, cell_.theta_field, tri, bary);
    value += eps_ * eps_ * theta_val * w.d2;
  }
  return value;
}

double TruncationField::value(double x1, double x2) const {
  const CellPoint cp = map_to_cell_unchecked(profile_, eps_, x1, x2);
  const Location loc = locate_point(cell_.cell.mesh, profile_, cp.y, cp.z);
  return combine_value(loc.tri, loc.bary, x1);
}

double TruncationField::value_in_tri(int cell_tri, double x1, double x2) const {
  CellPoint cp = map_to_cell_unchecked(profile_, eps_, x1, x2);
  cp.y = shift_into_column(cell_.cell.mesh, cell_tri, cp.y);
  const auto bary = barycentric_in(cell_.cell.mesh, cell_tri, cp.y, cp.z);
  return combine_value(cell_tri, bary, x1);
}

Vec2 TruncationField::gradient_in_tri(int cell_tri, double x1, double x2) const {
  const TriMesh& mesh = cell_.cell.mesh;
  CellPoint cp = map_to_cell_unchecked(profile_, eps_, x1, x2);
  cp.y = shift_into_column(mesh, cell_tri, cp.y);
  const auto bary = barycentric_in(mesh, cell_tri, cp.y, cp.z);

  const W0Derivatives w = w0_.eval(x1);
  const double x_val = interpolate(mesh, cell_.x_field, cell_tri, bary);
  const Vec2 gx = grad_x_[static_cast<std::size_t>(cell_tri)];

  // d/dx1 = d/dx + (1/eps) d/dy,  d/dx2 = (1/eps) d/dz applied to
  // w0 - eps X w0' + eps^2 theta w0''
  Vec2 grad;
  grad.x = w.d1 - gx.x * w.d1 - eps_ * x_val * w.d2;
  grad.y = -gx.y * w.d1;
  if (order_ == 2) {
    const double theta_val = interpolate(mesh, cell_.theta_field, cell_tri, bary);
    const Vec2 gt = grad_theta_[static_cast<std::size_t>(cell_tri)];
    grad.x += eps_ * gt.x * w.d2 + eps_ * eps_ * theta_val * w.d3;
    grad.y += eps_ * gt.y * w.d2;
  }
  return grad;
}

Vec2 TruncationField::gradient(double x1, double x2) const {
  const CellPoint cp = map_to_cell_unchecked(profile_, eps_, x1, x2);
  const Location loc = locate_point(cell_.cell.mesh, profile_, cp.y, cp.z);
  return gradient_in_tri(loc.tri, x1, x2);
}

TruncationField::CorrectorTerms TruncationField::corrector_terms(
    double x1, double x2) const {
  const CellPoint cp = map_to_cell_unchecked(profile_, eps_, x1, x2);
  const Location loc = locate_point(cell_.cell.mesh, profile_, cp.y, cp.z);
  const TriMesh& mesh = cell_.cell.mesh;
  const W0Derivatives w = w0_.eval(x1);

  const double x_val = interpolate(mesh, cell_.x_field, loc.tri, loc.bary);
  CorrectorTerms terms;
  terms.kappa = -eps_ * x_val * w.d1;
  terms.mu = terms.kappa;
  if (order_ == 2 && !cell_.theta_field.empty()) {
    const double theta_val =
        interpolate(mesh, cell_.theta_field, loc.tri, loc.bary);
    terms.mu += eps_ * eps_ * theta_val * w.d2;
  }
  return terms;
}

int cell_triangle_for_thin_triangle(const TriMesh& thin, const TriMesh& cell,
                                    int thin_tri) {
  const int parity = thin_tri % 2;
  const int quad = thin_tri / 2;
  const int col = quad / thin.layers;
  const int row = quad % thin.layers;
  const int cell_col = col % cell.columns;
  return 2 * (cell_col * cell.layers + row) + parity;
}

void assert_cell_alignment(const TriMesh& thin, const TriMesh& cell,
                           double eps) {
  if (thin.layers != cell.layers)
    throw std::runtime_error("cell alignment: layer counts differ");
  if (thin.columns % cell.columns != 0)
    throw std::runtime_error("cell alignment: column counts incompatible");

  const double period = cell.col_x.back() - cell.col_x.front();
  const int m = cell.columns;
  for (int c = 0; c <= thin.columns; ++c) {
    const int cc = c % m;
    const int k = c / m;
    const double expect_x =
        eps * (cell.col_x[static_cast<std::size_t>(cc)] +
               static_cast<double>(k) * period);
    const double expect_h = eps * cell.col_height[static_cast<std::size_t>(cc)];
    if (std::abs(thin.col_x[static_cast<std::size_t>(c)] - expect_x) >
        1e-10 * std::max(1.0, std::abs(expect_x)))
      throw std::runtime_error("cell alignment: column abscissas mismatch");
    if (std::abs(thin.col_height[static_cast<std::size_t>(c)] - expect_h) >
        1e-10 * std::abs(expect_h))
      throw std::runtime_error("cell alignment: column heights mismatch");
  }
}

}  // namespace oscilla
