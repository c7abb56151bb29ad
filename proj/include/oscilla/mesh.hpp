// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "oscilla/geometry.hpp"

namespace oscilla {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

enum class EdgeTag { Lower, Upper, LateralLeft, LateralRight };

/// Boundary edge (a -> b), oriented counterclockwise around the domain so
/// the outward normal is (t.y, -t.x)/|t|; `tri` is the owning triangle.
struct BoundaryEdge {
  int a;
  int b;
  EdgeTag tag;
  int tri;
};

/// Structured P1 triangulation of a region { 0 < x < X, 0 < z < top(x) }
/// built over a tensor grid: `columns` vertical strips, `layers` rows per
/// strip graded proportionally to the local height, each quad split along
/// the lower-left/upper-right diagonal.
class TriMesh {
 public:
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> tris;  // counterclockwise
  std::vector<BoundaryEdge> boundary;

  int columns = 0;  ///< number of quad columns (m per period x periods)
  int layers = 0;   ///< quad rows per column
  double dx = 0.0;  ///< column spacing
  std::vector<double> col_x;       ///< size columns+1
  std::vector<double> col_height;  ///< top z per column line, size columns+1
  double area = 0.0;               ///< sum of triangle areas

  int node_index(int col, int layer) const {
    return col * (layers + 1) + layer;
  }
  int node_count() const { return static_cast<int>(nodes.size()); }
  int tri_count() const { return static_cast<int>(tris.size()); }

  std::array<Vec2, 3> tri_coords(int t) const {
    const auto& tri = tris[static_cast<std::size_t>(t)];
    return {nodes[static_cast<std::size_t>(tri[0])],
            nodes[static_cast<std::size_t>(tri[1])],
            nodes[static_cast<std::size_t>(tri[2])]};
  }
  double tri_area(int t) const;
};

/// Master/slave node pairs identifying the right lateral boundary with the
/// left one (periodicity carrier).
struct PeriodicPairing {
  std::vector<std::pair<int, int>> pairs;  // (master on y=0, slave on y=L)
};

/// Thin-domain mesh over (0,1) x (0, eps g(x1/eps)) with m cells per period
/// and n layers. Requires 1/(eps L) to be a whole number of periods.
TriMesh build_thin_mesh(const PeriodicProfile& profile, double eps, int m,
                        int n);

struct CellMesh {
  TriMesh mesh;
  PeriodicPairing pairing;
  double area = 0.0;  ///< polygonal |Y*|
};

/// Cell mesh over one period (0,L) x (0,g(y)), plus the periodic pairing.
CellMesh build_cell_mesh(const PeriodicProfile& profile, int m, int n);

struct Location {
  int tri;
  std::array<double, 3> bary;
};

/// O(1) structured lookup on a cell mesh. Points up to a 1e-9 relative
/// slack above g(y) (or marginally outside the polygonal top) are clamped
/// onto the boundary; anything farther out is rejected.
Location locate_point(const TriMesh& cell_mesh, const PeriodicProfile& profile,
                      double y, double z);

/// Plain-text dump: node count + coordinates, triangle triples, tagged
/// boundary edges. Format documented in the README.
void dump_mesh(const TriMesh& mesh, std::ostream& os);

}  // namespace oscilla
