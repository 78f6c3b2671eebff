#include "leafpat/reference.hpp"

#include <stdexcept>

namespace leafpat {

namespace {

// P1 shape values at the three edge midpoints (same quadrature as the
// parallel assembly).
constexpr double kMidPhi[3][3] = {
    {0.5, 0.5, 0.0},
    {0.0, 0.5, 0.5},
    {0.5, 0.0, 0.5},
};

void check_fields(const Mesh& m, const FieldPair& f) {
  if (f.n1.size() != static_cast<std::size_t>(m.n_nodes) || f.n2.size() != static_cast<std::size_t>(m.n_nodes))
    throw std::invalid_argument("field size does not match mesh node count");
}

} // namespace

SparseMatrix reference_assemble_mass(const Mesh& m) {
  SparseMatrix a = SparseMatrix::from_pattern(m.n_nodes, m.n_nodes, m.adj_ptr, m.adj_col);
  const double diag = m.area / 6.0;
  const double off = m.area / 12.0;
  for (int t = 0; t < m.n_triangles; ++t) {
    const auto& nodes = m.tri[static_cast<std::size_t>(t)];
    for (int li = 0; li < 3; ++li)
      for (int lj = 0; lj < 3; ++lj)
        a.at(nodes[static_cast<std::size_t>(li)], nodes[static_cast<std::size_t>(lj)]) += (li == lj) ? diag : off;
  }
  return a;
}

SparseMatrix reference_assemble_diffusion(const Mesh& m, const ModelParams& p, const FieldPair& current) {
  check_fields(m, current);
  const int n = m.n_nodes;
  std::vector<double> c1(static_cast<std::size_t>(n)), c2(static_cast<std::size_t>(n)),
      l1(static_cast<std::size_t>(n)), l2(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const std::size_t kk = static_cast<std::size_t>(k);
    c1[kk] = eval_coeff(p.c1, current.n1[kk], current.n2[kk]);
    c2[kk] = eval_coeff(p.c2, current.n2[kk], current.n1[kk]);
    l1[kk] = eval_coeff(p.lam1, current.n1[kk], current.n2[kk]);
    l2[kk] = eval_coeff(p.lam2, current.n2[kk], current.n1[kk]);
  }

  SparseMatrix a = SparseMatrix::from_pattern(2 * n, 2 * n, m.sys_ptr, m.sys_col);
  const double w = m.area / 3.0;
  const double d1 = p.d1, d2 = p.d2();

  for (int t = 0; t < m.n_triangles; ++t) {
    const auto& nodes = m.tri[static_cast<std::size_t>(t)];
    const auto& g = m.shape_grad[static_cast<std::size_t>(t & 3)];
    double c1l[3], c2l[3], l1l[3], l2l[3], n1l[3], n2l[3];
    for (int l = 0; l < 3; ++l) {
      const std::size_t nd = static_cast<std::size_t>(nodes[static_cast<std::size_t>(l)]);
      c1l[l] = c1[nd];
      c2l[l] = c2[nd];
      l1l[l] = l1[nd];
      l2l[l] = l2[nd];
      n1l[l] = current.n1[nd];
      n2l[l] = current.n2[nd];
    }
    const double gc1x = c1l[0] * g[0][0] + c1l[1] * g[1][0] + c1l[2] * g[2][0];
    const double gc1y = c1l[0] * g[0][1] + c1l[1] * g[1][1] + c1l[2] * g[2][1];
    const double gc2x = c2l[0] * g[0][0] + c2l[1] * g[1][0] + c2l[2] * g[2][0];
    const double gc2y = c2l[0] * g[0][1] + c2l[1] * g[1][1] + c2l[2] * g[2][1];

    for (int q = 0; q < 3; ++q) {
      const double* phi = kMidPhi[q];
      const double c1q = phi[0] * c1l[0] + phi[1] * c1l[1] + phi[2] * c1l[2];
      const double c2q = phi[0] * c2l[0] + phi[1] * c2l[1] + phi[2] * c2l[2];
      const double l1q = phi[0] * l1l[0] + phi[1] * l1l[1] + phi[2] * l1l[2];
      const double l2q = phi[0] * l2l[0] + phi[1] * l2l[1] + phi[2] * l2l[2];
      const double n1q = phi[0] * n1l[0] + phi[1] * n1l[1] + phi[2] * n1l[2];
      const double n2q = phi[0] * n2l[0] + phi[1] * n2l[1] + phi[2] * n2l[2];
      for (int li = 0; li < 3; ++li) {
        const double tg1x = phi[li] * gc1x + c1q * g[static_cast<std::size_t>(li)][0];
        const double tg1y = phi[li] * gc1y + c1q * g[static_cast<std::size_t>(li)][1];
        const double tg2x = phi[li] * gc2x + c2q * g[static_cast<std::size_t>(li)][0];
        const double tg2y = phi[li] * gc2y + c2q * g[static_cast<std::size_t>(li)][1];
        const int ri = nodes[static_cast<std::size_t>(li)];
        for (int lj = 0; lj < 3; ++lj) {
          const double dot1 = g[static_cast<std::size_t>(lj)][0] * tg1x + g[static_cast<std::size_t>(lj)][1] * tg1y;
          const double dot2 = g[static_cast<std::size_t>(lj)][0] * tg2x + g[static_cast<std::size_t>(lj)][1] * tg2y;
          const int cj = nodes[static_cast<std::size_t>(lj)];
          a.at(ri, cj) += w * d1 * c1q * dot1;
          a.at(ri, n + cj) -= w * d1 * l1q * n1q * dot1;
          a.at(n + ri, cj) -= w * d2 * l2q * n2q * dot2;
          a.at(n + ri, n + cj) += w * d2 * c2q * dot2;
        }
      }
    }
  }
  return a;
}

SparseMatrix reference_assemble_reaction(const Mesh& m, const ModelParams& p, const FieldPair& current) {
  check_fields(m, current);
  const int n = m.n_nodes;
  std::vector<double> f1n(static_cast<std::size_t>(n)), f2n(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const std::size_t kk = static_cast<std::size_t>(k);
    const auto [f1, f2] = reaction_weights(p, current.n1[kk], current.n2[kk]);
    f1n[kk] = f1;
    f2n[kk] = f2;
  }

  SparseMatrix a = SparseMatrix::from_pattern(2 * n, 2 * n, m.sys_ptr, m.sys_col);
  const double w = m.area / 3.0;
  for (int t = 0; t < m.n_triangles; ++t) {
    const auto& nodes = m.tri[static_cast<std::size_t>(t)];
    double f1l[3], f2l[3];
    for (int l = 0; l < 3; ++l) {
      const std::size_t nd = static_cast<std::size_t>(nodes[static_cast<std::size_t>(l)]);
      f1l[l] = f1n[nd];
      f2l[l] = f2n[nd];
    }
    for (int q = 0; q < 3; ++q) {
      const double* phi = kMidPhi[q];
      const double f1q = phi[0] * f1l[0] + phi[1] * f1l[1] + phi[2] * f1l[2];
      const double f2q = phi[0] * f2l[0] + phi[1] * f2l[1] + phi[2] * f2l[2];
      for (int li = 0; li < 3; ++li) {
        const int ri = nodes[static_cast<std::size_t>(li)];
        for (int lj = 0; lj < 3; ++lj) {
          const int cj = nodes[static_cast<std::size_t>(lj)];
          const double pp = phi[li] * phi[lj];
          a.at(ri, cj) += w * f1q * pp;
          a.at(n + ri, n + cj) += w * f2q * pp;
        }
      }
    }
  }
  return a;
}

std::vector<RegionMapRow> reference_sweep(const SweepSpec& spec) {
  validate(spec.base);
  const std::vector<double> v1 = axis_values(spec.axis1);
  const std::vector<double> v2 = axis_values(spec.axis2);
  std::vector<RegionMapRow> rows;
  rows.reserve(v1.size() * v2.size());
  for (const double a1 : v1) {
    for (const double a2 : v2) {
      ModelParams p = spec.base;
      std::optional<double> o12, o21;
      auto apply = [&](const std::string& name, double v) {
        if (name == "zeta") p.zeta = v;
        else if (name == "beta") p.beta = v;
        else if (name == "nu") p.nu = v;
        else if (name == "tau") p.tau = v;
        else if (name == "delta") p.delta = v;
        else if (name == "delta12_scale") o12 = v;
        else if (name == "delta21_scale") o21 = v;
        else throw std::invalid_argument("unknown sweep parameter '" + name + "'");
      };
      apply(spec.axis1.name, a1);
      apply(spec.axis2.name, a2);
      rows.push_back({a1, a2, classify_point(p, o12, o21)});
    }
  }
  return rows;
}

void reference_relax_transport_step(const KineticGrid& g, KineticState& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("kinetic step: dt must be > 0");
  if (dt > kinetic_cfl_dt(g, s) * (1.0 + 1e-12))
    throw std::invalid_argument("kinetic step: dt exceeds the CFL bound");

  const int nx = g.nx;
  const int nslices = g.ntheta * g.nu;
  const double lam = dt / g.dx;
  std::vector<double> fnew(s.f.size());

  for (int sl = 0; sl < nslices; ++sl) {
    const int j = sl / g.nu;
    const int l = sl % g.nu;
    const double a = s.c * g.u[static_cast<std::size_t>(l)] * g.cos_theta[static_cast<std::size_t>(j)] / s.epsilon;
    const double* f = s.f.data() + static_cast<std::size_t>(sl) * static_cast<std::size_t>(nx);
    const double* fm = s.f.data() +
                       (static_cast<std::size_t>(g.mirror[static_cast<std::size_t>(j)]) * static_cast<std::size_t>(g.nu) +
                        static_cast<std::size_t>(l)) *
                           static_cast<std::size_t>(nx);
    double* fn = fnew.data() + static_cast<std::size_t>(sl) * static_cast<std::size_t>(nx);

    double flux_left = a > 0.0 ? a * fm[0] : a * f[0];
    for (int i = 0; i < nx; ++i) {
      double flux_right;
      if (i == nx - 1) {
        flux_right = a < 0.0 ? a * fm[nx - 1] : a * f[nx - 1];
      } else {
        flux_right = a > 0.0 ? a * f[i] : a * f[i + 1];
      }
      fn[i] = f[i] - lam * (flux_right - flux_left);
      flux_left = flux_right;
    }
  }

  const double coef = dt * s.eta / (s.epsilon * s.epsilon);
  const double q = coef / (1.0 + coef);
  const double w = g.w_theta * g.w_u;
  const double w_total = w * static_cast<double>(nslices);
  for (int i = 0; i < nx; ++i) {
    double acc = 0.0;
    for (int sl = 0; sl < nslices; ++sl)
      acc += fnew[static_cast<std::size_t>(sl) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)];
    const double target = w * acc / w_total;
    for (int sl = 0; sl < nslices; ++sl) {
      double& v = fnew[static_cast<std::size_t>(sl) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)];
      v += q * (target - v);
    }
  }

  s.f.swap(fnew);
  s.t += dt;
}

} // namespace leafpat
