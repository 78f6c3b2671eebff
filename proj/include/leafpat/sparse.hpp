// Compressed sparse row matrix with the few operations the solvers need.

#pragma once

#include <vector>

namespace leafpat {

struct SparseMatrix {
  int nrows = 0, ncols = 0;
  std::vector<int> rowptr; ///< size nrows+1
  std::vector<int> col;    ///< sorted within each row
  std::vector<double> val;

  int nnz() const { return static_cast<int>(col.size()); }

  /// Zero-valued matrix over a given pattern.
  static SparseMatrix from_pattern(int nrows, int ncols,
                                   const std::vector<int>& rowptr,
                                   const std::vector<int>& col);

  /// Reference to an entry that must exist in the pattern
  /// (throws std::out_of_range otherwise).
  double& at(int i, int j);

  /// Value of an entry, 0 when outside the pattern.
  double get(int i, int j) const;
};

/// y = A x, rows in parallel (deterministic: each row is one fixed-order sum).
void spmv(const SparseMatrix& a, const double* x, double* y);

/// Serial reference version of spmv.
void spmv_serial(const SparseMatrix& a, const double* x, double* y);

} // namespace leafpat
