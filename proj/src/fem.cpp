// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include "oscilla/fem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oscilla {
namespace {

struct TriGeometry {
  std::array<Vec2, 3> grad;  // P1 shape-function gradients
  double area;
};

TriGeometry tri_geometry(const std::array<Vec2, 3>& p) {
  const double det = (p[1].x - p[0].x) * (p[2].y - p[0].y) -
                     (p[1].y - p[0].y) * (p[2].x - p[0].x);
  if (!(det > 0.0))
    throw std::invalid_argument("element_matrices: degenerate triangle");
  TriGeometry g;
  g.area = 0.5 * det;
  g.grad[0] = {(p[1].y - p[2].y) / det, (p[2].x - p[1].x) / det};
  g.grad[1] = {(p[2].y - p[0].y) / det, (p[0].x - p[2].x) / det};
  g.grad[2] = {(p[0].y - p[1].y) / det, (p[1].x - p[0].x) / det};
  return g;
}

std::array<double, 3> barycentric(const std::array<Vec2, 3>& p, const Vec2& q) {
  const double det = (p[1].x - p[0].x) * (p[2].y - p[0].y) -
                     (p[1].y - p[0].y) * (p[2].x - p[0].x);
  const double b1 = ((q.x - p[0].x) * (p[2].y - p[0].y) -
                     (q.y - p[0].y) * (p[2].x - p[0].x)) /
                    det;
  const double b2 = ((p[1].x - p[0].x) * (q.y - p[0].y) -
                     (p[1].y - p[0].y) * (q.x - p[0].x)) /
                    det;
  return {1.0 - b1 - b2, b1, b2};
}

}  // namespace

std::array<Vec2, 3> quadrature_points(const std::array<Vec2, 3>& p) {
  return {Vec2{0.5 * (p[0].x + p[1].x), 0.5 * (p[0].y + p[1].y)},
          Vec2{0.5 * (p[1].x + p[2].x), 0.5 * (p[1].y + p[2].y)},
          Vec2{0.5 * (p[2].x + p[0].x), 0.5 * (p[2].y + p[0].y)}};
}

ElementMatrices element_matrices(const std::array<Vec2, 3>& p) {
  const TriGeometry g = tri_geometry(p);
  ElementMatrices em;
  em.area = g.area;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      em.stiffness[i][j] =
          g.area * (g.grad[i].x * g.grad[j].x + g.grad[i].y * g.grad[j].y);
  const double m_off = g.area / 12.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) em.mass[i][j] = (i == j ? 2.0 : 1.0) * m_off;
  return em;
}

AssembledSystem assemble_system(const TriMesh& mesh) {
  const int n = mesh.node_count();
  std::vector<Triplet> kt, mt;
  kt.reserve(static_cast<std::size_t>(mesh.tri_count()) * 9);
  mt.reserve(static_cast<std::size_t>(mesh.tri_count()) * 9);
  for (int t = 0; t < mesh.tri_count(); ++t) {
    const auto& tri = mesh.tris[static_cast<std::size_t>(t)];
    const ElementMatrices em = element_matrices(mesh.tri_coords(t));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        kt.push_back({tri[i], tri[j], em.stiffness[i][j]});
        mt.push_back({tri[i], tri[j], em.mass[i][j]});
      }
    }
  }
  return {CsrMatrix::from_triplets(n, kt), CsrMatrix::from_triplets(n, mt)};
}

std::vector<double> assemble_volume_load(
    const TriMesh& mesh, const std::function<double(const Vec2&)>& integrand) {
  std::vector<double> load(static_cast<std::size_t>(mesh.node_count()), 0.0);
  for (int t = 0; t < mesh.tri_count(); ++t) {
    const auto& tri = mesh.tris[static_cast<std::size_t>(t)];
    const auto p = mesh.tri_coords(t);
    const auto q = quadrature_points(p);
    const double w = mesh.tri_area(t) / 3.0;
    const double f01 = integrand(q[0]);
    const double f12 = integrand(q[1]);
    const double f20 = integrand(q[2]);
    // phi_i = 1/2 on the two midpoints adjacent to node i, 0 opposite
    load[static_cast<std::size_t>(tri[0])] += w * 0.5 * (f01 + f20);
    load[static_cast<std::size_t>(tri[1])] += w * 0.5 * (f01 + f12);
    load[static_cast<std::size_t>(tri[2])] += w * 0.5 * (f12 + f20);
  }
  return load;
}

std::vector<double> assemble_upper_boundary_load(const TriMesh& mesh) {
  std::vector<double> load(static_cast<std::size_t>(mesh.node_count()), 0.0);
  for (const BoundaryEdge& e : mesh.boundary) {
    if (e.tag != EdgeTag::Upper) continue;
    const Vec2 pa = mesh.nodes[static_cast<std::size_t>(e.a)];
    const Vec2 pb = mesh.nodes[static_cast<std::size_t>(e.b)];
    // outward normal (t.y, -t.x)/len, so N1 * len / 2 = t.y / 2
    const double half = 0.5 * (pb.y - pa.y);
    load[static_cast<std::size_t>(e.a)] += half;
    load[static_cast<std::size_t>(e.b)] += half;
  }
  return load;
}

std::vector<double> PeriodicDofMap::expand(
    std::span<const double> condensed) const {
  std::vector<double> full(full_to_cond.size());
  for (std::size_t i = 0; i < full_to_cond.size(); ++i)
    full[i] = condensed[static_cast<std::size_t>(full_to_cond[i])];
  return full;
}

std::vector<double> PeriodicDofMap::condense_sum(
    std::span<const double> full) const {
  std::vector<double> c(cond_to_full.size(), 0.0);
  for (std::size_t i = 0; i < full_to_cond.size(); ++i)
    c[static_cast<std::size_t>(full_to_cond[i])] += full[i];
  return c;
}

CondensedSystem apply_periodic(const CsrMatrix& a, std::span<const double> b,
                               const PeriodicPairing& pairing) {
  const int n = a.rows();
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("apply_periodic: rhs dimension mismatch");

  std::vector<int> master_of(static_cast<std::size_t>(n), -1);
  for (const auto& [master, slave] : pairing.pairs) {
    if (master < 0 || master >= n || slave < 0 || slave >= n || master == slave)
      throw std::invalid_argument("apply_periodic: invalid pair");
    if (master_of[static_cast<std::size_t>(slave)] != -1)
      throw std::invalid_argument("apply_periodic: repeated slave node");
    master_of[static_cast<std::size_t>(slave)] = master;
  }
  for (const auto& [master, slave] : pairing.pairs) {
    if (master_of[static_cast<std::size_t>(master)] != -1)
      throw std::invalid_argument("apply_periodic: master is itself a slave");
  }

  CondensedSystem sys;
  sys.dofs.full_to_cond.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (master_of[static_cast<std::size_t>(i)] == -1) {
      sys.dofs.full_to_cond[static_cast<std::size_t>(i)] =
          sys.dofs.condensed_size();
      sys.dofs.cond_to_full.push_back(i);
    }
  }
  for (int i = 0; i < n; ++i) {
    const int m = master_of[static_cast<std::size_t>(i)];
    if (m != -1)
      sys.dofs.full_to_cond[static_cast<std::size_t>(i)] =
          sys.dofs.full_to_cond[static_cast<std::size_t>(m)];
  }

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nnz()));
  const auto ro = a.row_offsets();
  const auto cols = a.cols();
  const auto vals = a.values();
  for (int r = 0; r < n; ++r) {
    const int rc = sys.dofs.full_to_cond[static_cast<std::size_t>(r)];
    for (int j = ro[r]; j < ro[r + 1]; ++j)
      triplets.push_back(
          {rc, sys.dofs.full_to_cond[static_cast<std::size_t>(cols[j])],
           vals[j]});
  }
  sys.matrix = CsrMatrix::from_triplets(sys.dofs.condensed_size(), triplets);
  sys.rhs = sys.dofs.condense_sum(b);
  return sys;
}

double FemSolution::value_in_tri(int t, const Vec2& p) const {
  const auto bc = barycentric(mesh->tri_coords(t), p);
  const auto& tri = mesh->tris[static_cast<std::size_t>(t)];
  return bc[0] * values[static_cast<std::size_t>(tri[0])] +
         bc[1] * values[static_cast<std::size_t>(tri[1])] +
         bc[2] * values[static_cast<std::size_t>(tri[2])];
}

Vec2 FemSolution::gradient(int t) const { return p1_gradient(*mesh, values, t); }

Vec2 p1_gradient(const TriMesh& mesh, std::span<const double> nodal, int t) {
  const TriGeometry g = tri_geometry(mesh.tri_coords(t));
  const auto& tri = mesh.tris[static_cast<std::size_t>(t)];
  Vec2 grad{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    const double v = nodal[static_cast<std::size_t>(tri[i])];
    grad.x += v * g.grad[i].x;
    grad.y += v * g.grad[i].y;
  }
  return grad;
}

FemSolution solve_neumann(const TriMesh& mesh, double eps,
                          const SourceFunction& f, const CgOptions& opt) {
  const AssembledSystem sys = assemble_system(mesh);
  const CsrMatrix system = csr_sum(sys.stiffness, sys.mass);
  const std::vector<double> load = assemble_volume_load(
      mesh, [&f](const Vec2& p) { return f.eval(p.x).f; });

  CgResult res = cg_solve(system, load, opt);
  if (!res.report.converged)
    throw std::runtime_error(
        "solve_neumann: CG did not converge (iterations=" +
        std::to_string(res.report.iterations) + ", residual=" +
        std::to_string(res.report.relative_residual) + ")");

  FemSolution sol;
  sol.mesh = &mesh;
  sol.eps = eps;
  sol.values = std::move(res.x);
  sol.report = res.report;
  return sol;
}

Norms rescaled_norms(const TriMesh& mesh, double eps, const QuadField& field) {
  double sum_val = 0.0;
  double sum_grad = 0.0;
  for (int t = 0; t < mesh.tri_count(); ++t) {
    const auto p = mesh.tri_coords(t);
    const auto q = quadrature_points(p);
    const double w = mesh.tri_area(t) / 3.0;
    for (const Vec2& qp : q) {
      double v = 0.0;
      Vec2 g{0.0, 0.0};
      field(t, qp, v, g);
      sum_val += w * v * v;
      sum_grad += w * (g.x * g.x + g.y * g.y);
    }
  }
  return {std::sqrt(sum_val / eps), std::sqrt((sum_val + sum_grad) / eps)};
}

double boundary_l2_norm(const TriMesh& mesh, std::span<const double> nodal) {
  double sum = 0.0;
  for (const BoundaryEdge& e : mesh.boundary) {
    const Vec2 pa = mesh.nodes[static_cast<std::size_t>(e.a)];
    const Vec2 pb = mesh.nodes[static_cast<std::size_t>(e.b)];
    const double len = std::hypot(pb.x - pa.x, pb.y - pa.y);
    const double ua = nodal[static_cast<std::size_t>(e.a)];
    const double ub = nodal[static_cast<std::size_t>(e.b)];
    sum += len * (ua * ua + ua * ub + ub * ub) / 3.0;
  }
  return std::sqrt(sum);
}

}  // namespace oscilla
