#pragma once

#include <cstddef>
#include <vector>

#include "oras/complex_csr.hpp"
#include "oras/types.hpp"

namespace oras {

/// LU factorization with partial pivoting of a square complex matrix stored
/// by bands (LAPACK gbtrf-style layout, kl = ku = profile bandwidth). On the
/// lexicographically ordered meshes used here the profile bandwidth is one
/// gridline of nodes; for small dense-profile matrices the band spans the
/// whole matrix and this reduces to ordinary dense LU.
class BandFactorization {
 public:
  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return band_; }

  /// Solves M x = b for the factored M.
  cvec solve(const cvec& b) const;

  friend BandFactorization band_factorize(const ComplexSparseMatrix& M);

 private:
  std::size_t n_ = 0;
  std::size_t band_ = 0;  // kl = ku = band_
  std::size_t ldab_ = 0;  // 3*band_ + 1 rows per column
  std::vector<cplx> ab_;
  std::vector<std::size_t> piv_;

  cplx& at(std::size_t i, std::size_t j) { return ab_[j * ldab_ + (2 * band_ + i - j)]; }
  const cplx& at(std::size_t i, std::size_t j) const {
    return ab_[j * ldab_ + (2 * band_ + i - j)];
  }
};

/// Factorizes a square matrix whose stored profile defines the bandwidth.
/// Throws SingularMatrixError when a pivot falls below 1e-14 times the
/// largest entry of M.
BandFactorization band_factorize(const ComplexSparseMatrix& M);

inline cvec solve(const BandFactorization& F, const cvec& b) { return F.solve(b); }

/// Banded Cholesky factorization of a real symmetric positive definite
/// matrix (stored as a ComplexSparseMatrix with exactly-zero imaginary
/// parts). Solves support complex right-hand sides.
class RealSpdBandFactorization {
 public:
  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return band_; }

  cvec solve(const cvec& b) const;
  rvec solve(const rvec& b) const;

  friend RealSpdBandFactorization real_spd_factorize(const ComplexSparseMatrix& M);

 private:
  std::size_t n_ = 0;
  std::size_t band_ = 0;
  std::vector<double> lo_;  // L(i,j) at lo_[j*(band_+1) + (i-j)], i >= j

  double& at(std::size_t i, std::size_t j) { return lo_[j * (band_ + 1) + (i - j)]; }
  const double& at(std::size_t i, std::size_t j) const {
    return lo_[j * (band_ + 1) + (i - j)];
  }

  template <typename Scalar>
  void solve_in_place(std::vector<Scalar>& x) const;
};

/// Throws NotSpdError on a non-positive pivot, std::invalid_argument if M
/// has nonzero imaginary parts or is not square.
RealSpdBandFactorization real_spd_factorize(const ComplexSparseMatrix& M);

inline cvec solve(const RealSpdBandFactorization& F, const cvec& b) { return F.solve(b); }

}  // namespace oras
