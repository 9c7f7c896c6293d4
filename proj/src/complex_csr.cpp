#include "oras/complex_csr.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "oras/vector_ops.hpp"

namespace oras {

ComplexSparseMatrix ComplexSparseMatrix::from_triplets(
    std::size_t nrows, std::size_t ncols,
    std::vector<std::tuple<std::size_t, std::size_t, cplx>> triplets,
    bool symmetric) {
  for (const auto& [i, j, v] : triplets) {
    if (i >= nrows || j >= ncols)
      throw std::invalid_argument("from_triplets: index out of range");
  }
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const auto& a, const auto& b) {
                     return std::tie(std::get<0>(a), std::get<1>(a)) <
                            std::tie(std::get<0>(b), std::get<1>(b));
                   });

  ComplexSparseMatrix M;
  M.nrows_ = nrows;
  M.ncols_ = ncols;
  M.symmetric_ = symmetric;
  M.row_offsets_.assign(nrows + 1, 0);
  M.col_indices_.reserve(triplets.size());
  M.values_.reserve(triplets.size());

  std::size_t pos = 0;
  for (std::size_t row = 0; row < nrows; ++row) {
    M.row_offsets_[row] = M.values_.size();
    while (pos < triplets.size() && std::get<0>(triplets[pos]) == row) {
      const std::size_t col = std::get<1>(triplets[pos]);
      cplx sum = 0.0;
      while (pos < triplets.size() && std::get<0>(triplets[pos]) == row &&
             std::get<1>(triplets[pos]) == col) {
        sum += std::get<2>(triplets[pos]);
        ++pos;
      }
      M.col_indices_.push_back(col);
      M.values_.push_back(sum);
    }
  }
  M.row_offsets_[nrows] = M.values_.size();
  return M;
}

cplx ComplexSparseMatrix::entry(std::size_t i, std::size_t j) const {
  if (i >= nrows_ || j >= ncols_)
    throw std::invalid_argument("entry: index out of range");
  const auto begin = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
  const auto end = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

double ComplexSparseMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexSparseMatrix::is_exactly_symmetric() const {
  if (nrows_ != ncols_) return false;
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      const std::size_t j = col_indices_[p];
      const cplx mirror = entry(j, i);
      if (mirror.real() != values_[p].real() || mirror.imag() != values_[p].imag())
        return false;
    }
  }
  return true;
}

void ComplexSparseMatrix::write_coordinate_format(std::ostream& os) const {
  os.precision(17);
  for (std::size_t i = 0; i < nrows_; ++i)
    for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
      os << i << ' ' << col_indices_[p] << ' ' << values_[p].real() << ' '
         << values_[p].imag() << '\n';
}

namespace {

inline cplx row_dot(const ComplexSparseMatrix& M, std::size_t row, const cvec& x) {
  const auto offs = M.row_offsets();
  const auto cols = M.col_indices();
  const auto vals = M.values();
  cplx s = 0.0;
  for (std::size_t p = offs[row]; p < offs[row + 1]; ++p) s += vals[p] * x[cols[p]];
  return s;
}

}  // namespace

cvec spmv(const ComplexSparseMatrix& M, const cvec& x, Exec exec) {
  if (x.size() != M.ncols())
    throw std::invalid_argument("spmv: dimension mismatch");
  cvec y(M.nrows());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(M.nrows());
  if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      y[static_cast<std::size_t>(i)] = row_dot(M, static_cast<std::size_t>(i), x);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      y[static_cast<std::size_t>(i)] = row_dot(M, static_cast<std::size_t>(i), x);
  }
  return y;
}

cvec spmv_conjugate_transpose(const ComplexSparseMatrix& M, const cvec& x,
                              Exec exec) {
  if (x.size() != M.nrows())
    throw std::invalid_argument("spmv_conjugate_transpose: dimension mismatch");
  if (M.symmetric_flag()) {
    // M^H = conj(M) for complex-symmetric M, so M^H x = conj(M conj(x)).
    return conjugated(spmv(M, conjugated(x), exec));
  }
  cvec y(M.ncols());
  const auto offs = M.row_offsets();
  const auto cols = M.col_indices();
  const auto vals = M.values();
  for (std::size_t i = 0; i < M.nrows(); ++i)
    for (std::size_t p = offs[i]; p < offs[i + 1]; ++p)
      y[cols[p]] += std::conj(vals[p]) * x[i];
  return y;
}

}  // namespace oras
