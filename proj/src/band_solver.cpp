#include "oras/band_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oras {

namespace {

std::size_t profile_bandwidth(const ComplexSparseMatrix& M) {
  std::size_t b = 0;
  const auto offs = M.row_offsets();
  const auto cols = M.col_indices();
  for (std::size_t i = 0; i < M.nrows(); ++i)
    for (std::size_t p = offs[i]; p < offs[i + 1]; ++p) {
      const std::size_t j = cols[p];
      b = std::max(b, i > j ? i - j : j - i);
    }
  return b;
}

}  // namespace

BandFactorization band_factorize(const ComplexSparseMatrix& M) {
  if (M.nrows() != M.ncols())
    throw std::invalid_argument("band_factorize: matrix must be square");
  const std::size_t n = M.nrows();

  BandFactorization F;
  F.n_ = n;
  F.band_ = profile_bandwidth(M);
  F.ldab_ = 3 * F.band_ + 1;
  F.ab_.assign(F.ldab_ * n, 0.0);
  F.piv_.resize(n);

  const auto offs = M.row_offsets();
  const auto cols = M.col_indices();
  const auto vals = M.values();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = offs[i]; p < offs[i + 1]; ++p) F.at(i, cols[p]) = vals[p];

  const std::size_t b = F.band_;
  const double tol = 1e-14 * M.max_abs();

  for (std::size_t j = 0; j < n; ++j) {
    // partial pivoting within the kl rows below the diagonal
    const std::size_t ilast = std::min(n - 1, j + b);
    std::size_t p = j;
    double best = std::abs(F.at(j, j));
    for (std::size_t i = j + 1; i <= ilast; ++i) {
      const double a = std::abs(F.at(i, j));
      if (a > best) {
        best = a;
        p = i;
      }
    }
    F.piv_[j] = p;
    if (best <= tol)
      throw SingularMatrixError("band_factorize: singular pivot at column " +
                                std::to_string(j));
    const std::size_t clast = std::min(n - 1, j + 2 * b);
    if (p != j)
      for (std::size_t c = j; c <= clast; ++c) std::swap(F.at(j, c), F.at(p, c));

    const cplx d = F.at(j, j);
    for (std::size_t i = j + 1; i <= ilast; ++i) {
      const cplx l = F.at(i, j) / d;
      F.at(i, j) = l;
      if (l != cplx(0.0))
        for (std::size_t c = j + 1; c <= clast; ++c) F.at(i, c) -= l * F.at(j, c);
    }
  }
  return F;
}

cvec BandFactorization::solve(const cvec& rhs) const {
  if (rhs.size() != n_)
    throw std::invalid_argument("BandFactorization::solve: dimension mismatch");
  cvec x = rhs;
  const std::size_t b = band_;
  for (std::size_t j = 0; j < n_; ++j) {
    if (piv_[j] != j) std::swap(x[j], x[piv_[j]]);
    const cplx xj = x[j];
    const std::size_t ilast = std::min(n_ - 1, j + b);
    for (std::size_t i = j + 1; i <= ilast; ++i) x[i] -= at(i, j) * xj;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    const std::size_t clast = std::min(n_ - 1, ii + 2 * b);
    cplx s = x[ii];
    for (std::size_t c = ii + 1; c <= clast; ++c) s -= at(ii, c) * x[c];
    x[ii] = s / at(ii, ii);
  }
  return x;
}

RealSpdBandFactorization real_spd_factorize(const ComplexSparseMatrix& M) {
  if (M.nrows() != M.ncols())
    throw std::invalid_argument("real_spd_factorize: matrix must be square");
  for (const cplx& v : M.values())
    if (v.imag() != 0.0)
      throw std::invalid_argument("real_spd_factorize: matrix has imaginary parts");

  const std::size_t n = M.nrows();
  RealSpdBandFactorization F;
  F.n_ = n;
  F.band_ = profile_bandwidth(M);
  F.lo_.assign((F.band_ + 1) * n, 0.0);

  const auto offs = M.row_offsets();
  const auto cols = M.col_indices();
  const auto vals = M.values();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = offs[i]; p < offs[i + 1]; ++p)
      if (cols[p] <= i) F.at(i, cols[p]) = vals[p].real();

  const std::size_t b = F.band_;
  for (std::size_t j = 0; j < n; ++j) {
    double d = F.at(j, j);
    const std::size_t t0 = j > b ? j - b : 0;
    for (std::size_t t = t0; t < j; ++t) d -= F.at(j, t) * F.at(j, t);
    if (!(d > 0.0))
      throw NotSpdError("real_spd_factorize: non-positive pivot at column " +
                        std::to_string(j));
    const double ljj = std::sqrt(d);
    F.at(j, j) = ljj;
    const std::size_t ilast = std::min(n - 1, j + b);
    for (std::size_t i = j + 1; i <= ilast; ++i) {
      double s = F.at(i, j);
      const std::size_t tt0 = std::max(t0, i > b ? i - b : 0);
      for (std::size_t t = tt0; t < j; ++t) s -= F.at(i, t) * F.at(j, t);
      F.at(i, j) = s / ljj;
    }
  }
  return F;
}

template <typename Scalar>
void RealSpdBandFactorization::solve_in_place(std::vector<Scalar>& x) const {
  const std::size_t b = band_;
  for (std::size_t j = 0; j < n_; ++j) {
    const Scalar xj = x[j] / at(j, j);
    x[j] = xj;
    const std::size_t ilast = std::min(n_ - 1, j + b);
    for (std::size_t i = j + 1; i <= ilast; ++i) x[i] -= at(i, j) * xj;
  }
  for (std::size_t jj = n_; jj-- > 0;) {
    Scalar s = x[jj];
    const std::size_t ilast = std::min(n_ - 1, jj + b);
    for (std::size_t i = jj + 1; i <= ilast; ++i) s -= at(i, jj) * x[i];
    x[jj] = s / at(jj, jj);
  }
}

cvec RealSpdBandFactorization::solve(const cvec& rhs) const {
  if (rhs.size() != n_)
    throw std::invalid_argument("RealSpdBandFactorization::solve: dimension mismatch");
  cvec x = rhs;
  solve_in_place(x);
  return x;
}

rvec RealSpdBandFactorization::solve(const rvec& rhs) const {
  if (rhs.size() != n_)
    throw std::invalid_argument("RealSpdBandFactorization::solve: dimension mismatch");
  rvec x = rhs;
  solve_in_place(x);
  return x;
}

}  // namespace oras
