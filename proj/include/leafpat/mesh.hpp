// Structured crisscross triangulation of a rectangle: nx-by-ny cells, each
// split into four triangles meeting at the cell center.  Node numbering is
// the (nx+1)(ny+1) grid vertices row-major (x fastest), followed by the
// nx*ny cell centers row-major.  Per cell, triangles are emitted south,
// east, north, west, all counterclockwise.

#pragma once

#include <array>
#include <utility>
#include <vector>

namespace leafpat {

struct Mesh {
  int nx = 0, ny = 0;
  double lx = 0.0, ly = 0.0;
  double hx = 0.0, hy = 0.0;
  int n_vertices = 0; ///< (nx+1)*(ny+1)
  int n_centers = 0;  ///< nx*ny
  int n_nodes = 0;    ///< n_vertices + n_centers
  int n_triangles = 0;

  std::vector<double> x, y;           ///< node coordinates
  std::vector<std::array<int, 3>> tri; ///< vertex ids, counterclockwise

  double area = 0.0; ///< per-triangle area (uniform: hx*hy/4)
  /// P1 shape-function gradients by triangle shape (tri index mod 4:
  /// 0 south, 1 east, 2 north, 3 west), local vertex, component.
  std::array<std::array<std::array<double, 2>, 3>, 4> shape_grad{};

  /// Triangles incident to each node as (triangle, local vertex) pairs,
  /// grouped contiguously: node_tris[node_tris_ptr[i] .. node_tris_ptr[i+1]).
  std::vector<int> node_tris_ptr;
  std::vector<std::pair<int, int>> node_tris;

  /// Scalar sparsity pattern (nodes coupled through a shared triangle,
  /// including self), CSR with sorted columns.
  std::vector<int> adj_ptr, adj_col;

  /// Two-species sparsity pattern on the 2N unknowns ordered
  /// [n1 nodes..., n2 nodes...]: every row couples to adj(i) and adj(i)+N.
  std::vector<int> sys_ptr, sys_col;
};

/// Build the crisscross mesh of [0,lx] x [0,ly].  Requires nx, ny >= 1 and
/// positive side lengths (throws std::invalid_argument).
Mesh build_mesh(int nx, int ny, double lx, double ly);

} // namespace leafpat
