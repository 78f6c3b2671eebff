#include "leafpat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leafpat {

namespace {

double dot_serial(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2_serial(const std::vector<double>& a) { return std::sqrt(dot_serial(a, a)); }

} // namespace

IluFactor ilu0(const SparseMatrix& a) {
  if (a.nrows != a.ncols) throw std::invalid_argument("ilu0: matrix must be square");
  IluFactor f;
  f.lu = a;
  f.diag.assign(static_cast<std::size_t>(a.nrows), -1);
  for (int i = 0; i < a.nrows; ++i) {
    for (int k = a.rowptr[static_cast<std::size_t>(i)]; k < a.rowptr[static_cast<std::size_t>(i) + 1]; ++k) {
      if (a.col[static_cast<std::size_t>(k)] == i) {
        f.diag[static_cast<std::size_t>(i)] = k;
        break;
      }
    }
    if (f.diag[static_cast<std::size_t>(i)] < 0)
      throw std::runtime_error("ilu0: missing diagonal entry in pattern");
  }

  auto& lu = f.lu;
  for (int i = 0; i < lu.nrows; ++i) {
    const int row_begin = lu.rowptr[static_cast<std::size_t>(i)];
    const int row_end = lu.rowptr[static_cast<std::size_t>(i) + 1];
    for (int kk = row_begin; kk < row_end; ++kk) {
      const int k = lu.col[static_cast<std::size_t>(kk)];
      if (k >= i) break;
      const double pivot = lu.val[static_cast<std::size_t>(f.diag[static_cast<std::size_t>(k)])];
      if (std::abs(pivot) < 1e-300) throw std::runtime_error("ilu0: zero pivot");
      const double lik = lu.val[static_cast<std::size_t>(kk)] / pivot;
      lu.val[static_cast<std::size_t>(kk)] = lik;
      // Subtract lik * U(k, j) from row i for the columns j > k present in
      // both rows; walk the two sorted column lists in step.
      int jj = kk + 1;
      int pk = f.diag[static_cast<std::size_t>(k)] + 1;
      const int k_end = lu.rowptr[static_cast<std::size_t>(k) + 1];
      while (jj < row_end && pk < k_end) {
        const int cj = lu.col[static_cast<std::size_t>(jj)];
        const int ck = lu.col[static_cast<std::size_t>(pk)];
        if (cj == ck) {
          lu.val[static_cast<std::size_t>(jj)] -= lik * lu.val[static_cast<std::size_t>(pk)];
          ++jj;
          ++pk;
        } else if (cj < ck) {
          ++jj;
        } else {
          ++pk;
        }
      }
    }
  }
  return f;
}

void ilu_apply(const IluFactor& f, const double* r, double* z) {
  const auto& lu = f.lu;
  const int n = lu.nrows;
  // Forward solve L y = r (unit diagonal), in place in z.
  for (int i = 0; i < n; ++i) {
    double s = r[i];
    for (int k = lu.rowptr[static_cast<std::size_t>(i)]; k < f.diag[static_cast<std::size_t>(i)]; ++k)
      s -= lu.val[static_cast<std::size_t>(k)] * z[lu.col[static_cast<std::size_t>(k)]];
    z[i] = s;
  }
  // Backward solve U z = y.
  for (int i = n - 1; i >= 0; --i) {
    double s = z[i];
    for (int k = f.diag[static_cast<std::size_t>(i)] + 1; k < lu.rowptr[static_cast<std::size_t>(i) + 1]; ++k)
      s -= lu.val[static_cast<std::size_t>(k)] * z[lu.col[static_cast<std::size_t>(k)]];
    z[i] = s / lu.val[static_cast<std::size_t>(f.diag[static_cast<std::size_t>(i)])];
  }
}

LinearSolveStats bicgstab(const SparseMatrix& a, const std::vector<double>& b,
                          std::vector<double>& x, const IluFactor& pc,
                          double rel_tol, int max_iters) {
  const std::size_t n = static_cast<std::size_t>(a.nrows);
  if (b.size() != n || x.size() != n) throw std::invalid_argument("bicgstab: size mismatch");

  LinearSolveStats stats;
  const double norm_b = norm2_serial(b);
  if (norm_b == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    stats.converged = true;
    return stats;
  }
  const double target = rel_tol * norm_b;

  std::vector<double> r(n), rhat(n), p(n, 0.0), v(n, 0.0), s(n), t(n), phat(n), shat(n), tmp(n);

  auto true_residual = [&](std::vector<double>& out) {
    spmv(a, x.data(), tmp.data());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.nrows; ++i) out[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] - tmp[static_cast<std::size_t>(i)];
  };

  true_residual(r);
  double res_norm = norm2_serial(r);
  if (res_norm <= target) {
    stats.converged = true;
    stats.rel_residual = res_norm / norm_b;
    return stats;
  }

  rhat = r;
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  bool fresh_direction = true;
  int restarts = 0;

  for (int it = 1; it <= max_iters; ++it) {
    stats.iterations = it;
    const double rho_new = dot_serial(rhat, r);
    if (std::abs(rho_new) < 1e-290 || (!fresh_direction && omega == 0.0)) {
      // Breakdown: restart from the true residual.
      if (++restarts > 5) break;
      true_residual(r);
      if (norm2_serial(r) <= target) break;
      rhat = r;
      rho = alpha = omega = 1.0;
      std::fill(p.begin(), p.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      fresh_direction = true;
      continue;
    }
    if (fresh_direction) {
      p = r;
      fresh_direction = false;
    } else {
      const double beta = (rho_new / rho) * (alpha / omega);
#pragma omp parallel for schedule(static)
      for (int i = 0; i < a.nrows; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        p[k] = r[k] + beta * (p[k] - omega * v[k]);
      }
    }
    ilu_apply(pc, p.data(), phat.data());
    spmv(a, phat.data(), v.data());
    const double rhat_v = dot_serial(rhat, v);
    if (std::abs(rhat_v) < 1e-290) {
      if (++restarts > 5) break;
      true_residual(r);
      rhat = r;
      rho = alpha = omega = 1.0;
      std::fill(p.begin(), p.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      fresh_direction = true;
      continue;
    }
    alpha = rho_new / rhat_v;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.nrows; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      s[k] = r[k] - alpha * v[k];
    }
    if (norm2_serial(s) <= target) {
#pragma omp parallel for schedule(static)
      for (int i = 0; i < a.nrows; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        x[k] += alpha * phat[k];
      }
      r = s;
      true_residual(r);
      res_norm = norm2_serial(r);
      if (res_norm <= target) break;
      rhat = r;
      rho = alpha = omega = 1.0;
      std::fill(p.begin(), p.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      fresh_direction = true;
      continue;
    }
    ilu_apply(pc, s.data(), shat.data());
    spmv(a, shat.data(), t.data());
    const double tt = dot_serial(t, t);
    if (tt == 0.0) {
      if (++restarts > 5) break;
#pragma omp parallel for schedule(static)
      for (int i = 0; i < a.nrows; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        x[k] += alpha * phat[k];
      }
      true_residual(r);
      rhat = r;
      rho = alpha = omega = 1.0;
      std::fill(p.begin(), p.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      fresh_direction = true;
      continue;
    }
    omega = dot_serial(t, s) / tt;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.nrows; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      x[k] += alpha * phat[k] + omega * shat[k];
      r[k] = s[k] - omega * t[k];
    }
    rho = rho_new;
    res_norm = norm2_serial(r);
    if (res_norm <= target) {
      true_residual(r);
      res_norm = norm2_serial(r);
      if (res_norm <= target) break;
      rhat = r;
      rho = alpha = omega = 1.0;
      std::fill(p.begin(), p.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      fresh_direction = true;
    }
  }

  true_residual(r);
  stats.rel_residual = norm2_serial(r) / norm_b;
  stats.converged = stats.rel_residual <= rel_tol;
  return stats;
}

} // namespace leafpat
