// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include "oscilla/cell.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oscilla {
namespace {

void subtract_node_mean(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  const double mean = s / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

void require_converged(const SolveReport& r, const char* what) {
  if (!r.converged)
    throw std::runtime_error(std::string(what) + ": CG did not converge (iterations=" +
                             std::to_string(r.iterations) + ")");
}

}  // namespace

XSolve solve_x(const CellMesh& cell, const CgOptions& opt) {
  const AssembledSystem sys = assemble_system(cell.mesh);
  const std::vector<double> load = assemble_upper_boundary_load(cell.mesh);

  double load_sum = 0.0;
  for (double v : load) load_sum += v;

  const CondensedSystem per = apply_periodic(sys.stiffness, load, cell.pairing);
  CgResult res = cg_solve_singular(per.matrix, per.rhs, opt);
  require_converged(res.report, "solve_x");

  XSolve out;
  out.x_field = per.dofs.expand(res.x);
  subtract_node_mean(out.x_field);
  out.report = res.report;
  out.load_sum = load_sum;
  return out;
}

RValues compute_r(const TriMesh& cell_mesh, std::span<const double> x_field) {
  const double area = cell_mesh.area;

  // integral of dX/dy: the P1 gradient is constant per triangle
  double flux_integral = 0.0;
  for (int t = 0; t < cell_mesh.tri_count(); ++t)
    flux_integral += cell_mesh.tri_area(t) * p1_gradient(cell_mesh, x_field, t).x;

  const AssembledSystem sys = assemble_system(cell_mesh);
  const double a_xx = sys.stiffness.quadratic_form(x_field);

  RValues r;
  r.flux = (area - flux_integral) / area;
  // a(y - X, y - X)/|Y*| with a(y,y) = |Y*| and a(y,X) = flux integral
  r.energy = (area - 2.0 * flux_integral + a_xx) / area;
  r.gap = std::abs(r.flux - r.energy);
  return r;
}

ThetaSolve solve_theta(const CellMesh& cell, std::span<const double> x_field,
                       double r, const CgOptions& opt) {
  const TriMesh& mesh = cell.mesh;
  std::vector<double> load(static_cast<std::size_t>(mesh.node_count()), 0.0);

  // b(phi) = int X dphi/dy + int (1 - r - dX/dy) phi, both element-exact
  // for the piecewise data.
  double compat = 0.0;
  for (int t = 0; t < mesh.tri_count(); ++t) {
    const auto& tri = mesh.tris[static_cast<std::size_t>(t)];
    const auto em = element_matrices(mesh.tri_coords(t));
    const double area_t = em.area;

    const Vec2 grad_x = p1_gradient(mesh, x_field, t);
    const double x_avg = (x_field[static_cast<std::size_t>(tri[0])] +
                          x_field[static_cast<std::size_t>(tri[1])] +
                          x_field[static_cast<std::size_t>(tri[2])]) /
                         3.0;
    const double c_t = 1.0 - r - grad_x.x;
    compat += c_t * area_t;

    const auto p = mesh.tri_coords(t);
    const double det = 2.0 * area_t;
    const std::array<Vec2, 3> dphi = {
        Vec2{(p[1].y - p[2].y) / det, (p[2].x - p[1].x) / det},
        Vec2{(p[2].y - p[0].y) / det, (p[0].x - p[2].x) / det},
        Vec2{(p[0].y - p[1].y) / det, (p[1].x - p[0].x) / det}};
    for (int i = 0; i < 3; ++i) {
      load[static_cast<std::size_t>(tri[i])] +=
          area_t * x_avg * dphi[i].x + c_t * area_t / 3.0;
    }
  }

  if (std::abs(compat) > 1e-8 * mesh.area)
    throw std::runtime_error(
        "solve_theta: compatibility residual exceeds 1e-8 * |Y*|; "
        "r is inconsistent with the X field");

  const AssembledSystem sys = assemble_system(mesh);
  const CondensedSystem per = apply_periodic(sys.stiffness, load, cell.pairing);
  CgResult res = cg_solve_singular(per.matrix, per.rhs, opt);
  require_converged(res.report, "solve_theta");

  ThetaSolve out;
  out.theta_field = per.dofs.expand(res.x);
  subtract_node_mean(out.theta_field);
  out.report = res.report;
  out.compat_residual = compat;
  return out;
}

CellSolutions solve_cell_problems(const PeriodicProfile& profile, int m, int n,
                                  const CgOptions& opt) {
  CellSolutions cs;
  cs.cell = build_cell_mesh(profile, m, n);
  cs.area = cs.cell.area;

  XSolve xs = solve_x(cs.cell, opt);
  cs.x_field = std::move(xs.x_field);
  cs.x_report = xs.report;
  cs.x_load_sum = xs.load_sum;

  const RValues r = compute_r(cs.cell.mesh, cs.x_field);
  cs.r_flux = r.flux;
  cs.r_energy = r.energy;
  cs.r_gap = r.gap;
  cs.r = r.flux;

  ThetaSolve ts = solve_theta(cs.cell, cs.x_field, cs.r, opt);
  cs.theta_field = std::move(ts.theta_field);
  cs.theta_report = ts.report;
  cs.theta_compat_residual = ts.compat_residual;
  return cs;
}

}  // namespace oscilla
