// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "oscilla/mesh.hpp"
#include "oscilla/sparse.hpp"

namespace oscilla {

struct ElementMatrices {
  std::array<std::array<double, 3>, 3> stiffness;
  std::array<std::array<double, 3>, 3> mass;
  double area;
};

/// P1 element stiffness (area * grad_i . grad_j) and exact mass
/// (area/12 * [[2,1,1],[1,2,1],[1,1,2]]). Throws on degenerate triangles.
ElementMatrices element_matrices(const std::array<Vec2, 3>& p);

struct AssembledSystem {
  CsrMatrix stiffness;
  CsrMatrix mass;
};

AssembledSystem assemble_system(const TriMesh& mesh);

/// Load vector of integrand * phi_i with the 3-point edge-midpoint rule
/// (exact for quadratic integrands).
std::vector<double> assemble_volume_load(
    const TriMesh& mesh, const std::function<double(const Vec2&)>& integrand);

/// Load vector of the first normal component over Upper-tagged edges:
/// per edge, N1 is taken from the polygonal edge geometry and the P1 trace
/// integral is exact (N1 * length / 2 per endpoint).
std::vector<double> assemble_upper_boundary_load(const TriMesh& mesh);

struct PeriodicDofMap {
  std::vector<int> full_to_cond;  ///< size = node count
  std::vector<int> cond_to_full;  ///< representative node per condensed dof
  int condensed_size() const { return static_cast<int>(cond_to_full.size()); }
  std::vector<double> expand(std::span<const double> condensed) const;
  std::vector<double> condense_sum(std::span<const double> full) const;
};

struct CondensedSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
  PeriodicDofMap dofs;
};

/// Folds slave rows/columns into masters. Symmetry is preserved; the dof
/// map recovers full nodal vectors. Throws on inconsistent pairings.
CondensedSystem apply_periodic(const CsrMatrix& a, std::span<const double> b,
                               const PeriodicPairing& pairing);

struct FemSolution {
  const TriMesh* mesh = nullptr;
  double eps = 1.0;
  std::vector<double> values;
  SolveReport report;

  double value_in_tri(int t, const Vec2& p) const;
  Vec2 gradient(int t) const;  ///< piecewise-constant P1 gradient
};

/// Full Neumann solve of (stiffness + mass) u = volume load of f(x1) on a
/// thin mesh; natural boundary conditions everywhere. Throws on CG failure.
FemSolution solve_neumann(const TriMesh& mesh, double eps,
                          const SourceFunction& f, const CgOptions& opt = {});

struct Norms {
  double l2;
  double h1;
};

/// Field evaluated at a quadrature point of triangle `tri`.
using QuadField =
    std::function<void(int tri, const Vec2& p, double& value, Vec2& grad)>;

/// eps^{-1/2}-rescaled L2 and H1 norms by the 3-point rule.
Norms rescaled_norms(const TriMesh& mesh, double eps, const QuadField& field);

/// Exact L2 norm of the P1 trace over all boundary edges.
double boundary_l2_norm(const TriMesh& mesh, std::span<const double> nodal);

/// P1 gradient of a nodal field on one triangle.
Vec2 p1_gradient(const TriMesh& mesh, std::span<const double> nodal, int t);

/// Midpoint-of-edges quadrature points of a triangle.
std::array<Vec2, 3> quadrature_points(const std::array<Vec2, 3>& p);

}  // namespace oscilla
