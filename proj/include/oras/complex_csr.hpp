#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <tuple>
#include <vector>

#include "oras/types.hpp"

namespace oras {

/// Compressed-row complex sparse matrix. Column indices are strictly
/// increasing within each row. A matrix assembled from a symmetric bilinear
/// form carries the `symmetric` flag, meaning every stored (i,j,v) has a
/// stored mirror (j,i) with the exact same value.
class ComplexSparseMatrix {
 public:
  ComplexSparseMatrix() = default;

  static ComplexSparseMatrix from_triplets(
      std::size_t nrows, std::size_t ncols,
      std::vector<std::tuple<std::size_t, std::size_t, cplx>> triplets,
      bool symmetric = false);

  std::size_t nrows() const { return nrows_; }
  std::size_t ncols() const { return ncols_; }
  std::size_t nnz() const { return values_.size(); }
  bool symmetric_flag() const { return symmetric_; }

  std::span<const std::size_t> row_offsets() const { return row_offsets_; }
  std::span<const std::size_t> col_indices() const { return col_indices_; }
  std::span<const cplx> values() const { return values_; }

  /// Stored entry (i,j), or zero if not stored.
  cplx entry(std::size_t i, std::size_t j) const;

  /// Largest |entry|.
  double max_abs() const;

  /// True if every stored (i,j) has a stored (j,i) with the identical value.
  bool is_exactly_symmetric() const;

  /// Debug export, one line per stored entry: "i j re im" (0-based).
  void write_coordinate_format(std::ostream& os) const;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<cplx> values_;
  bool symmetric_ = false;
};

/// y = M x. The OpenMP path partitions rows; per-row accumulation order is
/// identical to the serial path, so both give bitwise-equal results.
cvec spmv(const ComplexSparseMatrix& M, const cvec& x, Exec exec = Exec::openmp);

/// y = conj(M)^T x (the Hermitian adjoint applied to x). Symmetric-flagged
/// matrices use conj(M conj(x)); the general path is a serial scatter.
cvec spmv_conjugate_transpose(const ComplexSparseMatrix& M, const cvec& x,
                              Exec exec = Exec::openmp);

}  // namespace oras
