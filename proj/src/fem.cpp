#include "leafpat/fem.hpp"

#include <algorithm>
#include <stdexcept>

namespace leafpat {

namespace {

// P1 shape values at the three edge midpoints of the reference triangle.
constexpr double kMidPhi[3][3] = {
    {0.5, 0.5, 0.0},
    {0.0, 0.5, 0.5},
    {0.5, 0.0, 0.5},
};

int slot_in_row(const Mesh& m, int node, int col_node) {
  const auto begin = m.adj_col.begin() + m.adj_ptr[static_cast<std::size_t>(node)];
  const auto end = m.adj_col.begin() + m.adj_ptr[static_cast<std::size_t>(node) + 1];
  const auto it = std::lower_bound(begin, end, col_node);
  return static_cast<int>(it - (m.adj_col.begin() + m.adj_ptr[static_cast<std::size_t>(node)]));
}

void check_fields(const Mesh& m, const FieldPair& f) {
  if (f.n1.size() != static_cast<std::size_t>(m.n_nodes) || f.n2.size() != static_cast<std::size_t>(m.n_nodes))
    throw std::invalid_argument("field size does not match mesh node count");
}

} // namespace

SparseMatrix assemble_mass(const Mesh& m) {
  SparseMatrix a = SparseMatrix::from_pattern(m.n_nodes, m.n_nodes, m.adj_ptr, m.adj_col);
  const double diag = m.area / 6.0;
  const double off = m.area / 12.0;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m.n_nodes; ++i) {
    const int base = m.adj_ptr[static_cast<std::size_t>(i)];
    for (int k = m.node_tris_ptr[static_cast<std::size_t>(i)]; k < m.node_tris_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      const auto [t, li] = m.node_tris[static_cast<std::size_t>(k)];
      const auto& nodes = m.tri[static_cast<std::size_t>(t)];
      for (int lj = 0; lj < 3; ++lj) {
        const int slot = base + slot_in_row(m, i, nodes[static_cast<std::size_t>(lj)]);
        a.val[static_cast<std::size_t>(slot)] += (lj == li) ? diag : off;
      }
    }
  }
  return a;
}

SparseMatrix assemble_mass_system(const Mesh& m) {
  const SparseMatrix scalar = assemble_mass(m);
  SparseMatrix a = SparseMatrix::from_pattern(2 * m.n_nodes, 2 * m.n_nodes, m.sys_ptr, m.sys_col);
  const int n = m.n_nodes;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const int deg = m.adj_ptr[static_cast<std::size_t>(i) + 1] - m.adj_ptr[static_cast<std::size_t>(i)];
    const int src = m.adj_ptr[static_cast<std::size_t>(i)];
    // Species-1 row: the scalar row in the first block, zeros in the second.
    std::copy_n(scalar.val.begin() + src, deg, a.val.begin() + a.rowptr[static_cast<std::size_t>(i)]);
    // Species-2 row: zeros in the first block, the scalar row in the second.
    std::copy_n(scalar.val.begin() + src, deg,
                a.val.begin() + a.rowptr[static_cast<std::size_t>(n + i)] + deg);
  }
  return a;
}

std::pair<double, double> reaction_weights(const ModelParams& p, double n1, double n2) {
  double shared = 0.0;
  if (!(n1 == 0.0 && n2 == 0.0)) {
    const double den = n1 + p.beta * n2;
    if (!(den > 0.0)) throw std::domain_error("reaction weights require n1 + beta*n2 > 0 away from the origin");
    shared = p.zeta * n1 * n2 / den;
  }
  return {shared - n2, p.beta * shared - p.tau - p.nu * n2};
}

namespace {

struct NodalCoeffs {
  std::vector<double> c1, c2, l1, l2;
};

NodalCoeffs nodal_coefficients(const Mesh& m, const ModelParams& p, const FieldPair& f) {
  NodalCoeffs n;
  const std::size_t nn = static_cast<std::size_t>(m.n_nodes);
  n.c1.resize(nn);
  n.c2.resize(nn);
  n.l1.resize(nn);
  n.l2.resize(nn);
  for (std::size_t k = 0; k < nn; ++k) {
    n.c1[k] = eval_coeff(p.c1, f.n1[k], f.n2[k]);
    n.c2[k] = eval_coeff(p.c2, f.n2[k], f.n1[k]);
    n.l1[k] = eval_coeff(p.lam1, f.n1[k], f.n2[k]);
    n.l2[k] = eval_coeff(p.lam2, f.n2[k], f.n1[k]);
  }
  return n;
}

} // namespace

SparseMatrix assemble_diffusion(const Mesh& m, const ModelParams& p, const FieldPair& current) {
  check_fields(m, current);
  const NodalCoeffs nc = nodal_coefficients(m, p, current);
  SparseMatrix a = SparseMatrix::from_pattern(2 * m.n_nodes, 2 * m.n_nodes, m.sys_ptr, m.sys_col);
  const int n = m.n_nodes;
  const double w = m.area / 3.0;
  const double d1 = p.d1, d2 = p.d2();

#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const int deg = m.adj_ptr[static_cast<std::size_t>(i) + 1] - m.adj_ptr[static_cast<std::size_t>(i)];
    const int row1 = a.rowptr[static_cast<std::size_t>(i)];
    const int row2 = a.rowptr[static_cast<std::size_t>(n + i)];
    for (int k = m.node_tris_ptr[static_cast<std::size_t>(i)]; k < m.node_tris_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      const auto [t, li] = m.node_tris[static_cast<std::size_t>(k)];
      const auto& nodes = m.tri[static_cast<std::size_t>(t)];
      const auto& g = m.shape_grad[static_cast<std::size_t>(t & 3)];

      double c1l[3], c2l[3], l1l[3], l2l[3], n1l[3], n2l[3];
      for (int l = 0; l < 3; ++l) {
        const std::size_t nd = static_cast<std::size_t>(nodes[static_cast<std::size_t>(l)]);
        c1l[l] = nc.c1[nd];
        c2l[l] = nc.c2[nd];
        l1l[l] = nc.l1[nd];
        l2l[l] = nc.l2[nd];
        n1l[l] = current.n1[nd];
        n2l[l] = current.n2[nd];
      }
      const double gc1x = c1l[0] * g[0][0] + c1l[1] * g[1][0] + c1l[2] * g[2][0];
      const double gc1y = c1l[0] * g[0][1] + c1l[1] * g[1][1] + c1l[2] * g[2][1];
      const double gc2x = c2l[0] * g[0][0] + c2l[1] * g[1][0] + c2l[2] * g[2][0];
      const double gc2y = c2l[0] * g[0][1] + c2l[1] * g[1][1] + c2l[2] * g[2][1];

      double k11[3] = {0, 0, 0}, k12[3] = {0, 0, 0}, k21[3] = {0, 0, 0}, k22[3] = {0, 0, 0};
      for (int q = 0; q < 3; ++q) {
        const double* phi = kMidPhi[q];
        const double c1q = phi[0] * c1l[0] + phi[1] * c1l[1] + phi[2] * c1l[2];
        const double c2q = phi[0] * c2l[0] + phi[1] * c2l[1] + phi[2] * c2l[2];
        const double l1q = phi[0] * l1l[0] + phi[1] * l1l[1] + phi[2] * l1l[2];
        const double l2q = phi[0] * l2l[0] + phi[1] * l2l[1] + phi[2] * l2l[2];
        const double n1q = phi[0] * n1l[0] + phi[1] * n1l[1] + phi[2] * n1l[2];
        const double n2q = phi[0] * n2l[0] + phi[1] * n2l[1] + phi[2] * n2l[2];
        // grad(c_i phi_row) at this quadrature point.
        const double tg1x = phi[li] * gc1x + c1q * g[static_cast<std::size_t>(li)][0];
        const double tg1y = phi[li] * gc1y + c1q * g[static_cast<std::size_t>(li)][1];
        const double tg2x = phi[li] * gc2x + c2q * g[static_cast<std::size_t>(li)][0];
        const double tg2y = phi[li] * gc2y + c2q * g[static_cast<std::size_t>(li)][1];
        for (int lj = 0; lj < 3; ++lj) {
          const double dot1 = g[static_cast<std::size_t>(lj)][0] * tg1x + g[static_cast<std::size_t>(lj)][1] * tg1y;
          const double dot2 = g[static_cast<std::size_t>(lj)][0] * tg2x + g[static_cast<std::size_t>(lj)][1] * tg2y;
          k11[lj] += w * d1 * c1q * dot1;
          k12[lj] -= w * d1 * l1q * n1q * dot1;
          k21[lj] -= w * d2 * l2q * n2q * dot2;
          k22[lj] += w * d2 * c2q * dot2;
        }
      }
      for (int lj = 0; lj < 3; ++lj) {
        const int idx = slot_in_row(m, i, nodes[static_cast<std::size_t>(lj)]);
        a.val[static_cast<std::size_t>(row1 + idx)] += k11[lj];
        a.val[static_cast<std::size_t>(row1 + deg + idx)] += k12[lj];
        a.val[static_cast<std::size_t>(row2 + idx)] += k21[lj];
        a.val[static_cast<std::size_t>(row2 + deg + idx)] += k22[lj];
      }
    }
  }
  return a;
}

SparseMatrix assemble_reaction(const Mesh& m, const ModelParams& p, const FieldPair& current) {
  check_fields(m, current);
  const std::size_t nn = static_cast<std::size_t>(m.n_nodes);
  std::vector<double> f1n(nn), f2n(nn);
  for (std::size_t k = 0; k < nn; ++k) {
    const auto [f1, f2] = reaction_weights(p, current.n1[k], current.n2[k]);
    f1n[k] = f1;
    f2n[k] = f2;
  }

  SparseMatrix a = SparseMatrix::from_pattern(2 * m.n_nodes, 2 * m.n_nodes, m.sys_ptr, m.sys_col);
  const int n = m.n_nodes;
  const double w = m.area / 3.0;

#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const int deg = m.adj_ptr[static_cast<std::size_t>(i) + 1] - m.adj_ptr[static_cast<std::size_t>(i)];
    const int row1 = a.rowptr[static_cast<std::size_t>(i)];
    const int row2 = a.rowptr[static_cast<std::size_t>(n + i)];
    for (int k = m.node_tris_ptr[static_cast<std::size_t>(i)]; k < m.node_tris_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      const auto [t, li] = m.node_tris[static_cast<std::size_t>(k)];
      const auto& nodes = m.tri[static_cast<std::size_t>(t)];
      double f1l[3], f2l[3];
      for (int l = 0; l < 3; ++l) {
        const std::size_t nd = static_cast<std::size_t>(nodes[static_cast<std::size_t>(l)]);
        f1l[l] = f1n[nd];
        f2l[l] = f2n[nd];
      }
      double r1[3] = {0, 0, 0}, r2[3] = {0, 0, 0};
      for (int q = 0; q < 3; ++q) {
        const double* phi = kMidPhi[q];
        const double f1q = phi[0] * f1l[0] + phi[1] * f1l[1] + phi[2] * f1l[2];
        const double f2q = phi[0] * f2l[0] + phi[1] * f2l[1] + phi[2] * f2l[2];
        for (int lj = 0; lj < 3; ++lj) {
          const double pp = phi[li] * phi[lj];
          r1[lj] += w * f1q * pp;
          r2[lj] += w * f2q * pp;
        }
      }
      for (int lj = 0; lj < 3; ++lj) {
        const int idx = slot_in_row(m, i, nodes[static_cast<std::size_t>(lj)]);
        a.val[static_cast<std::size_t>(row1 + idx)] += r1[lj];
        a.val[static_cast<std::size_t>(row2 + deg + idx)] += r2[lj];
      }
    }
  }
  return a;
}

double integrate_field(const Mesh& m, const SparseMatrix& mass, const std::vector<double>& a) {
  if (mass.nrows != m.n_nodes || a.size() != static_cast<std::size_t>(m.n_nodes))
    throw std::invalid_argument("integrate_field: size mismatch");
  std::vector<double> tmp(a.size());
  spmv(mass, a.data(), tmp.data());
  double s = 0.0;
  for (const double v : tmp) s += v;
  return s;
}

} // namespace leafpat
