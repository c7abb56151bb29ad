// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include "oscilla/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace oscilla {
namespace {

double cross(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }

/// Shared tensor-grid construction: column lines at col_x[i] with top
/// heights col_height[i], n graded layers, fixed diagonal split.
TriMesh build_grid(std::vector<double> col_x, std::vector<double> col_height,
                   int n) {
  const int cols = static_cast<int>(col_x.size()) - 1;
  TriMesh mesh;
  mesh.columns = cols;
  mesh.layers = n;
  mesh.dx = col_x[1] - col_x[0];
  mesh.col_x = std::move(col_x);
  mesh.col_height = std::move(col_height);

  mesh.nodes.reserve(static_cast<std::size_t>(cols + 1) *
                     static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= cols; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double frac = static_cast<double>(j) / static_cast<double>(n);
      mesh.nodes.push_back({mesh.col_x[static_cast<std::size_t>(i)],
                            mesh.col_height[static_cast<std::size_t>(i)] * frac});
    }
  }

  mesh.tris.reserve(static_cast<std::size_t>(cols) * n * 2);
  for (int i = 0; i < cols; ++i) {
    for (int j = 0; j < n; ++j) {
      const int a = mesh.node_index(i, j);
      const int b = mesh.node_index(i + 1, j);
      const int c = mesh.node_index(i + 1, j + 1);
      const int d = mesh.node_index(i, j + 1);
      mesh.tris.push_back({a, b, c});
      mesh.tris.push_back({a, c, d});
    }
  }

  mesh.area = 0.0;
  for (int t = 0; t < mesh.tri_count(); ++t) {
    const double at = mesh.tri_area(t);
    if (!(at > 0.0))
      throw std::invalid_argument("TriMesh: degenerate triangle in grid");
    mesh.area += at;
  }

  // Boundary, counterclockwise per edge (domain on the left).
  for (int i = 0; i < cols; ++i)
    mesh.boundary.push_back({mesh.node_index(i, 0), mesh.node_index(i + 1, 0),
                             EdgeTag::Lower, 2 * (i * n + 0)});
  for (int j = 0; j < n; ++j)
    mesh.boundary.push_back({mesh.node_index(cols, j),
                             mesh.node_index(cols, j + 1), EdgeTag::LateralRight,
                             2 * ((cols - 1) * n + j)});
  for (int i = cols - 1; i >= 0; --i)
    mesh.boundary.push_back({mesh.node_index(i + 1, n), mesh.node_index(i, n),
                             EdgeTag::Upper, 2 * (i * n + (n - 1)) + 1});
  for (int j = n - 1; j >= 0; --j)
    mesh.boundary.push_back({mesh.node_index(0, j + 1), mesh.node_index(0, j),
                             EdgeTag::LateralLeft, 2 * (0 * n + j) + 1});
  return mesh;
}

}  // namespace

double TriMesh::tri_area(int t) const {
  const auto p = tri_coords(t);
  const Vec2 e1{p[1].x - p[0].x, p[1].y - p[0].y};
  const Vec2 e2{p[2].x - p[0].x, p[2].y - p[0].y};
  return 0.5 * cross(e1, e2);
}

TriMesh build_thin_mesh(const PeriodicProfile& profile, double eps, int m,
                        int n) {
  if (!(eps > 0.0)) throw std::invalid_argument("build_thin_mesh: eps <= 0");
  if (m < 2 || n < 1)
    throw std::invalid_argument("build_thin_mesh: degenerate m or n");

  const double period = profile.period();
  const double periods_real = 1.0 / (eps * period);
  const long long periods = std::llround(periods_real);
  if (periods < 1 ||
      std::abs(periods_real - static_cast<double>(periods)) >
          1e-9 * periods_real)
    throw std::invalid_argument(
        "build_thin_mesh: 1/(eps L) must be a whole number of periods");

  const int total_cols = static_cast<int>(periods) * m;
  const double dy = period / static_cast<double>(m);

  std::vector<double> col_x(static_cast<std::size_t>(total_cols) + 1);
  std::vector<double> col_h(static_cast<std::size_t>(total_cols) + 1);
  for (int c = 0; c <= total_cols; ++c) {
    const double y = static_cast<double>(c) * dy;  // unfolded cell coordinate
    col_x[static_cast<std::size_t>(c)] = eps * y;
    col_h[static_cast<std::size_t>(c)] = eps * profile(y);
  }
  return build_grid(std::move(col_x), std::move(col_h), n);
}

CellMesh build_cell_mesh(const PeriodicProfile& profile, int m, int n) {
  if (m < 2 || n < 1)
    throw std::invalid_argument("build_cell_mesh: degenerate m or n");

  const double dy = profile.period() / static_cast<double>(m);
  std::vector<double> col_x(static_cast<std::size_t>(m) + 1);
  std::vector<double> col_h(static_cast<std::size_t>(m) + 1);
  for (int c = 0; c <= m; ++c) {
    const double y = static_cast<double>(c) * dy;
    col_x[static_cast<std::size_t>(c)] = y;
    col_h[static_cast<std::size_t>(c)] = profile(y);
  }

  CellMesh cell;
  cell.mesh = build_grid(std::move(col_x), std::move(col_h), n);
  cell.area = cell.mesh.area;

  cell.pairing.pairs.reserve(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const int master = cell.mesh.node_index(0, j);
    const int slave = cell.mesh.node_index(m, j);
    const double zm = cell.mesh.nodes[static_cast<std::size_t>(master)].y;
    const double zs = cell.mesh.nodes[static_cast<std::size_t>(slave)].y;
    if (std::abs(zm - zs) > 1e-12 * std::max(1.0, std::abs(zm)))
      throw std::invalid_argument(
          "build_cell_mesh: g(0) != g(L), lateral boundaries do not match");
    cell.pairing.pairs.emplace_back(master, slave);
  }
  return cell;
}

Location locate_point(const TriMesh& cell_mesh, const PeriodicProfile& profile,
                      double y, double z) {
  const int cols = cell_mesh.columns;
  int i = static_cast<int>(std::floor((y - cell_mesh.col_x[0]) / cell_mesh.dx));
  i = std::clamp(i, 0, cols - 1);

  const double x0 = cell_mesh.col_x[static_cast<std::size_t>(i)];
  const double lam = std::clamp((y - x0) / cell_mesh.dx, 0.0, 1.0);
  const double h0 = cell_mesh.col_height[static_cast<std::size_t>(i)];
  const double h1 = cell_mesh.col_height[static_cast<std::size_t>(i) + 1];
  const double h_local = (1.0 - lam) * h0 + lam * h1;

  // The polygonal region is authoritative; points above its top chord are
  // admitted only within the analytic slack and then clamped onto the edge.
  const double top = profile(y);
  if ((z > h_local * (1.0 + 1e-12) + 1e-15 &&
       z > top * (1.0 + 1e-9) + 1e-15) ||
      z < -top * 1e-9 - 1e-15)
    throw std::domain_error("locate_point: z outside the cell beyond slack");

  const int n = cell_mesh.layers;
  const double zc = std::clamp(z, 0.0, h_local);
  int j = static_cast<int>(std::floor(static_cast<double>(n) * zc / h_local));
  j = std::clamp(j, 0, n - 1);

  const int a = cell_mesh.node_index(i, j);
  const int c = cell_mesh.node_index(i + 1, j + 1);
  const Vec2 pa = cell_mesh.nodes[static_cast<std::size_t>(a)];
  const Vec2 pc = cell_mesh.nodes[static_cast<std::size_t>(c)];
  // Ties on the diagonal resolve to the lower triangle.
  const double side =
      cross({pc.x - pa.x, pc.y - pa.y}, {y - pa.x, z - pa.y});
  const int t = 2 * (i * n + j) + (side > 0.0 ? 1 : 0);

  const auto p = cell_mesh.tri_coords(t);
  const double det = cross({p[1].x - p[0].x, p[1].y - p[0].y},
                           {p[2].x - p[0].x, p[2].y - p[0].y});
  double b1 = cross({y - p[0].x, z - p[0].y}, {p[2].x - p[0].x, p[2].y - p[0].y}) / det;
  double b2 = cross({p[1].x - p[0].x, p[1].y - p[0].y}, {y - p[0].x, z - p[0].y}) / det;
  double b0 = 1.0 - b1 - b2;

  // Boundary clamping: negative components from slack are zeroed and the
  // rest renormalized.
  b0 = std::max(b0, 0.0);
  b1 = std::max(b1, 0.0);
  b2 = std::max(b2, 0.0);
  const double s = b0 + b1 + b2;
  return {t, {b0 / s, b1 / s, b2 / s}};
}

void dump_mesh(const TriMesh& mesh, std::ostream& os) {
  char buf[80];
  os << "nodes " << mesh.node_count() << "\n";
  for (const Vec2& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    os << buf;
  }
  os << "triangles " << mesh.tri_count() << "\n";
  for (const auto& t : mesh.tris)
    os << t[0] << " " << t[1] << " " << t[2] << "\n";
  os << "edges " << mesh.boundary.size() << "\n";
  for (const BoundaryEdge& e : mesh.boundary) {
    const char* tag = e.tag == EdgeTag::Lower        ? "lower"
                      : e.tag == EdgeTag::Upper      ? "upper"
                      : e.tag == EdgeTag::LateralLeft ? "left"
                                                      : "right";
    os << e.a << " " << e.b << " " << tag << "\n";
  }
}

}  // namespace oscilla
