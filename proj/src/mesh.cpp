#include "leafpat/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace leafpat {

Mesh build_mesh(int nx, int ny, double lx, double ly) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("build_mesh: nx and ny must be >= 1");
  if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("build_mesh: side lengths must be positive");

  Mesh m;
  m.nx = nx;
  m.ny = ny;
  m.lx = lx;
  m.ly = ly;
  m.hx = lx / static_cast<double>(nx);
  m.hy = ly / static_cast<double>(ny);
  m.n_vertices = (nx + 1) * (ny + 1);
  m.n_centers = nx * ny;
  m.n_nodes = m.n_vertices + m.n_centers;
  m.n_triangles = 4 * nx * ny;

  m.x.resize(static_cast<std::size_t>(m.n_nodes));
  m.y.resize(static_cast<std::size_t>(m.n_nodes));
  for (int iy = 0; iy <= ny; ++iy) {
    for (int ix = 0; ix <= nx; ++ix) {
      const int id = iy * (nx + 1) + ix;
      m.x[static_cast<std::size_t>(id)] = static_cast<double>(ix) * m.hx;
      m.y[static_cast<std::size_t>(id)] = static_cast<double>(iy) * m.hy;
    }
  }
  for (int cy = 0; cy < ny; ++cy) {
    for (int cx = 0; cx < nx; ++cx) {
      const int id = m.n_vertices + cy * nx + cx;
      m.x[static_cast<std::size_t>(id)] = (static_cast<double>(cx) + 0.5) * m.hx;
      m.y[static_cast<std::size_t>(id)] = (static_cast<double>(cy) + 0.5) * m.hy;
    }
  }

  m.tri.resize(static_cast<std::size_t>(m.n_triangles));
  for (int cy = 0; cy < ny; ++cy) {
    for (int cx = 0; cx < nx; ++cx) {
      const int v00 = cy * (nx + 1) + cx;
      const int v10 = v00 + 1;
      const int v01 = v00 + (nx + 1);
      const int v11 = v01 + 1;
      const int c = m.n_vertices + cy * nx + cx;
      const int t0 = 4 * (cy * nx + cx);
      m.tri[static_cast<std::size_t>(t0 + 0)] = {v00, v10, c}; // south
      m.tri[static_cast<std::size_t>(t0 + 1)] = {v10, v11, c}; // east
      m.tri[static_cast<std::size_t>(t0 + 2)] = {v11, v01, c}; // north
      m.tri[static_cast<std::size_t>(t0 + 3)] = {v01, v00, c}; // west
    }
  }

  m.area = 0.25 * m.hx * m.hy;

  // Shape-function gradients: all cells are congruent, so only the four
  // shapes (south/east/north/west) need gradients; compute them from the
  // first cell's triangles.
  for (int s = 0; s < 4 && s < m.n_triangles; ++s) {
    const auto& t = m.tri[static_cast<std::size_t>(s)];
    const double x0 = m.x[static_cast<std::size_t>(t[0])], y0 = m.y[static_cast<std::size_t>(t[0])];
    const double x1 = m.x[static_cast<std::size_t>(t[1])], y1 = m.y[static_cast<std::size_t>(t[1])];
    const double x2 = m.x[static_cast<std::size_t>(t[2])], y2 = m.y[static_cast<std::size_t>(t[2])];
    const double two_a = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
    m.shape_grad[static_cast<std::size_t>(s)][0] = {(y1 - y2) / two_a, (x2 - x1) / two_a};
    m.shape_grad[static_cast<std::size_t>(s)][1] = {(y2 - y0) / two_a, (x0 - x2) / two_a};
    m.shape_grad[static_cast<std::size_t>(s)][2] = {(y0 - y1) / two_a, (x1 - x0) / two_a};
  }

  // Node -> incident (triangle, local vertex) adjacency, grouped by node in
  // increasing triangle order.
  std::vector<int> counts(static_cast<std::size_t>(m.n_nodes), 0);
  for (const auto& t : m.tri)
    for (int l = 0; l < 3; ++l) ++counts[static_cast<std::size_t>(t[static_cast<std::size_t>(l)])];
  m.node_tris_ptr.assign(static_cast<std::size_t>(m.n_nodes) + 1, 0);
  for (int i = 0; i < m.n_nodes; ++i)
    m.node_tris_ptr[static_cast<std::size_t>(i) + 1] =
        m.node_tris_ptr[static_cast<std::size_t>(i)] + counts[static_cast<std::size_t>(i)];
  m.node_tris.resize(static_cast<std::size_t>(m.node_tris_ptr.back()));
  std::vector<int> fill(m.node_tris_ptr.begin(), m.node_tris_ptr.end() - 1);
  for (int t = 0; t < m.n_triangles; ++t) {
    for (int l = 0; l < 3; ++l) {
      const int node = m.tri[static_cast<std::size_t>(t)][static_cast<std::size_t>(l)];
      m.node_tris[static_cast<std::size_t>(fill[static_cast<std::size_t>(node)]++)] = {t, l};
    }
  }

  // Scalar sparsity pattern: nodes sharing a triangle, plus the diagonal.
  m.adj_ptr.assign(static_cast<std::size_t>(m.n_nodes) + 1, 0);
  std::vector<int> cols;
  cols.reserve(16);
  std::vector<int> all_cols;
  all_cols.reserve(static_cast<std::size_t>(m.n_nodes) * 9);
  for (int i = 0; i < m.n_nodes; ++i) {
    cols.clear();
    cols.push_back(i);
    for (int k = m.node_tris_ptr[static_cast<std::size_t>(i)]; k < m.node_tris_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      const auto& t = m.tri[static_cast<std::size_t>(m.node_tris[static_cast<std::size_t>(k)].first)];
      for (int l = 0; l < 3; ++l) cols.push_back(t[static_cast<std::size_t>(l)]);
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    m.adj_ptr[static_cast<std::size_t>(i) + 1] = m.adj_ptr[static_cast<std::size_t>(i)] + static_cast<int>(cols.size());
    all_cols.insert(all_cols.end(), cols.begin(), cols.end());
  }
  m.adj_col = std::move(all_cols);

  // Coupled two-species pattern: row i and row i+N both reference
  // adj(i) and adj(i)+N.
  const int n = m.n_nodes;
  m.sys_ptr.assign(2 * static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) {
    const int deg = 2 * (m.adj_ptr[static_cast<std::size_t>(i) + 1] - m.adj_ptr[static_cast<std::size_t>(i)]);
    m.sys_ptr[static_cast<std::size_t>(i) + 1] = deg;
    m.sys_ptr[static_cast<std::size_t>(n + i) + 1] = deg;
  }
  for (std::size_t i = 1; i < m.sys_ptr.size(); ++i) m.sys_ptr[i] += m.sys_ptr[i - 1];
  m.sys_col.resize(static_cast<std::size_t>(m.sys_ptr.back()));
  for (int i = 0; i < 2 * n; ++i) {
    const int node = i % n;
    int pos = m.sys_ptr[static_cast<std::size_t>(i)];
    for (int k = m.adj_ptr[static_cast<std::size_t>(node)]; k < m.adj_ptr[static_cast<std::size_t>(node) + 1]; ++k)
      m.sys_col[static_cast<std::size_t>(pos++)] = m.adj_col[static_cast<std::size_t>(k)];
    for (int k = m.adj_ptr[static_cast<std::size_t>(node)]; k < m.adj_ptr[static_cast<std::size_t>(node) + 1]; ++k)
      m.sys_col[static_cast<std::size_t>(pos++)] = m.adj_col[static_cast<std::size_t>(k)] + n;
  }

  return m;
}

} // namespace leafpat
