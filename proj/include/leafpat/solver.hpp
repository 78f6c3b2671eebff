// ILU(0)-preconditioned BiCGSTAB for the nonsymmetric systems produced by
// the implicit timestepper.  Dot products are accumulated serially in fixed
// order so results are identical for any thread count.

#pragma once

#include <vector>

#include "leafpat/sparse.hpp"

namespace leafpat {

/// Incomplete LU factorization with zero fill-in, stored in one CSR matrix
/// (strict lower part holds L with unit diagonal implied; diagonal and upper
/// part hold U).
struct IluFactor {
  SparseMatrix lu;
  std::vector<int> diag; ///< index of the diagonal entry of each row
};

/// Factorize on the pattern of `a`.  Throws std::runtime_error on a zero
/// pivot.
IluFactor ilu0(const SparseMatrix& a);

/// z = (LU)^{-1} r via forward/backward substitution.
void ilu_apply(const IluFactor& f, const double* r, double* z);

struct LinearSolveStats {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

/// Solve a x = b starting from the initial guess in `x` (warm start).
/// Convergence: ||b - a x||_2 <= rel_tol * ||b||_2, verified on the
/// explicitly recomputed residual.  When the initial guess already
/// satisfies the bound the vector is returned unchanged with 0 iterations.
LinearSolveStats bicgstab(const SparseMatrix& a, const std::vector<double>& b,
                          std::vector<double>& x, const IluFactor& pc,
                          double rel_tol, int max_iters);

} // namespace leafpat
