#pragma once

#include <cstddef>
#include <functional>

#include "oras/types.hpp"

namespace oras {

enum class GmresStatus { converged, breakdown, max_iterations };

struct GmresResult {
  cvec solution;
  std::size_t iterations = 0;
  rvec residual_history;  // true relative residuals, one entry per iteration
  GmresStatus status = GmresStatus::max_iterations;
};

using LinearMap = std::function<cvec(const cvec&)>;

/// Full (unrestarted) right-preconditioned GMRES for A x = b, zero initial
/// guess. The Krylov space is built for A*B^{-1}; the returned solution is
/// x = B^{-1} z. Each iteration forms the candidate solution and records its
/// true relative residual ||b - A x|| / ||b||; the first candidate at or
/// below `tol` is returned. Right preconditioning keeps these residuals
/// preconditioner-independent.
GmresResult gmres(const LinearMap& apply_operator,
                  const LinearMap& apply_preconditioner, const cvec& b,
                  double tol, std::size_t max_iter);

/// Unpreconditioned convenience overload.
GmresResult gmres(const LinearMap& apply_operator, const cvec& b, double tol,
                  std::size_t max_iter);

}  // namespace oras
