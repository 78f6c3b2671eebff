#include "leafpat/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace leafpat {

SparseMatrix SparseMatrix::from_pattern(int nrows, int ncols,
                                        const std::vector<int>& rowptr,
                                        const std::vector<int>& col) {
  if (static_cast<int>(rowptr.size()) != nrows + 1)
    throw std::invalid_argument("from_pattern: rowptr size must be nrows+1");
  SparseMatrix a;
  a.nrows = nrows;
  a.ncols = ncols;
  a.rowptr = rowptr;
  a.col = col;
  a.val.assign(col.size(), 0.0);
  return a;
}

double& SparseMatrix::at(int i, int j) {
  const auto begin = col.begin() + rowptr[static_cast<std::size_t>(i)];
  const auto end = col.begin() + rowptr[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) throw std::out_of_range("SparseMatrix::at: entry outside pattern");
  return val[static_cast<std::size_t>(it - col.begin())];
}

double SparseMatrix::get(int i, int j) const {
  const auto begin = col.begin() + rowptr[static_cast<std::size_t>(i)];
  const auto end = col.begin() + rowptr[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return val[static_cast<std::size_t>(it - col.begin())];
}

void spmv(const SparseMatrix& a, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.nrows; ++i) {
    double s = 0.0;
    for (int k = a.rowptr[static_cast<std::size_t>(i)]; k < a.rowptr[static_cast<std::size_t>(i) + 1]; ++k)
      s += a.val[static_cast<std::size_t>(k)] * x[a.col[static_cast<std::size_t>(k)]];
    y[i] = s;
  }
}

void spmv_serial(const SparseMatrix& a, const double* x, double* y) {
  for (int i = 0; i < a.nrows; ++i) {
    double s = 0.0;
    for (int k = a.rowptr[static_cast<std::size_t>(i)]; k < a.rowptr[static_cast<std::size_t>(i) + 1]; ++k)
      s += a.val[static_cast<std::size_t>(k)] * x[a.col[static_cast<std::size_t>(k)]];
    y[i] = s;
  }
}

} // namespace leafpat
