#pragma once

#include <cstddef>
#include <functional>

#include "oras/types.hpp"

namespace oras {

struct PowerIterationResult {
  double value = 0.0;  // largest-eigenvalue estimate
  std::size_t iterations = 0;
  bool converged = false;
  // ||C v - value*v||_metric / value at the accepted iterate; a value above
  // 1e-4 signals eigenvalue clustering (the estimate is still returned).
  double rayleigh_residual = 0.0;
};

using MetricInner = std::function<cplx(const cvec&, const cvec&)>;

/// Power iteration for the largest eigenvalue of an operator C that is
/// self-adjoint positive semidefinite in the given inner product. Stops when
/// the eigenvalue estimate changes by less than `tol` in relative terms.
///
/// The start vector is deterministic: all-ones for seed 0, otherwise a fixed
/// pseudo-random vector expanded from the seed (useful to rule out a start
/// vector that is accidentally orthogonal to the top eigenvector, e.g. on
/// mirror-symmetric geometries).
PowerIterationResult power_iteration_generalized(
    const std::function<cvec(const cvec&)>& apply_C, const MetricInner& metric_inner,
    std::size_t dim, double tol, std::size_t max_iter, unsigned seed = 0);

}  // namespace oras
