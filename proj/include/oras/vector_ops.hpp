#pragma once

#include <cmath>
#include <cstddef>

#include "oras/types.hpp"

namespace oras {

// BLAS-1 style helpers on complex vectors. All reductions run in index order
// so results are deterministic.

inline cplx dot(const cvec& x, const cvec& y) {
  // <x, y> = sum_i x_i * conj(y_i)
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

inline double norm2(const cvec& x) {
  double s = 0.0;
  for (const cplx& v : x) s += std::norm(v);
  return std::sqrt(s);
}

inline void axpy(cplx alpha, const cvec& x, cvec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(cvec& x, cplx alpha) {
  for (cplx& v : x) v *= alpha;
}

inline cvec conjugated(cvec x) {
  for (cplx& v : x) v = std::conj(v);
  return x;
}

}  // namespace oras
