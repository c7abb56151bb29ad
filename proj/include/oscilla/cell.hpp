// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "oscilla/fem.hpp"
#include "oscilla/mesh.hpp"
#include "oscilla/sparse.hpp"

namespace oscilla {

/// Solutions of the two periodic cell problems and the homogenized
/// coefficient, with the cross-check diagnostics.
struct CellSolutions {
  CellMesh cell;
  std::vector<double> x_field;      ///< mean zero over nodes
  std::vector<double> theta_field;  ///< mean zero over nodes
  double r = 1.0;                   ///< canonical value (flux formula)
  double r_flux = 1.0;
  double r_energy = 1.0;
  double r_gap = 0.0;
  double area = 0.0;
  double x_load_sum = 0.0;            ///< compatibility of the X load
  double theta_compat_residual = 0.0; ///< integral of the theta right side
  SolveReport x_report;
  SolveReport theta_report;
};

struct XSolve {
  std::vector<double> x_field;
  SolveReport report;
  double load_sum;
};

/// First cell problem: periodic-condensed singular stiffness system with
/// the upper-boundary N1 load; mean-zero normalization.
XSolve solve_x(const CellMesh& cell, const CgOptions& opt = {});

struct RValues {
  double flux;
  double energy;
  double gap;
};

/// Homogenized coefficient by the flux formula (element-exact integral of
/// 1 - dX/dy) and by the energy formula; the canonical value is `flux`.
RValues compute_r(const TriMesh& cell_mesh, std::span<const double> x_field);

struct ThetaSolve {
  std::vector<double> theta_field;
  SolveReport report;
  double compat_residual;
};

/// Second cell problem, right side assembled in integrated-by-parts form.
/// Throws if the compatibility residual exceeds 1e-8 * |Y*|.
ThetaSolve solve_theta(const CellMesh& cell, std::span<const double> x_field,
                       double r, const CgOptions& opt = {});

/// Full pipeline: X, r (both formulas), theta. The result is independent
/// of eps and reused across a whole sweep.
CellSolutions solve_cell_problems(const PeriodicProfile& profile, int m, int n,
                                  const CgOptions& opt = {});

}  // namespace oscilla
