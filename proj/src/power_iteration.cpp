#include "oras/power_iteration.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "oras/vector_ops.hpp"

namespace oras {

namespace {

constexpr double kZeroEigenvalue = 1e-20;

cvec start_vector(std::size_t dim, unsigned seed) {
  cvec v(dim, 1.0);
  if (seed != 0) {
    // raw mt19937 draws mapped to [-1,1), identical on every platform
    std::mt19937 gen(seed);
    auto u = [&gen] { return 2.0 * (gen() * (1.0 / 4294967296.0)) - 1.0; };
    for (cplx& x : v) x = cplx(u(), u());
  }
  return v;
}

}  // namespace

PowerIterationResult power_iteration_generalized(
    const std::function<cvec(const cvec&)>& apply_C, const MetricInner& metric_inner,
    std::size_t dim, double tol, std::size_t max_iter, unsigned seed) {
  if (!(tol > 0.0))
    throw std::invalid_argument("power_iteration_generalized: tol must be positive");
  if (dim == 0) throw std::invalid_argument("power_iteration_generalized: empty space");

  cvec v = start_vector(dim, seed);
  {
    const double nv = std::sqrt(std::abs(metric_inner(v, v).real()));
    if (!(nv > 0.0))
      throw std::invalid_argument("power_iteration_generalized: degenerate metric");
    scale(v, 1.0 / nv);
  }

  PowerIterationResult res;
  double lambda_old = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= max_iter; ++it) {
    cvec w = apply_C(v);
    const double lambda = metric_inner(w, v).real();
    const double wnorm2 = std::max(0.0, metric_inner(w, w).real());
    res.value = lambda;
    res.iterations = it;

    const bool both_zero =
        std::abs(lambda) <= kZeroEigenvalue && std::abs(lambda_old) <= kZeroEigenvalue;
    const bool settled =
        std::abs(lambda - lambda_old) <= tol * std::max(std::abs(lambda), kZeroEigenvalue);
    if (wnorm2 == 0.0 || both_zero || settled) {
      res.converged = true;
      const double r2 = std::max(0.0, wnorm2 - lambda * lambda);
      res.rayleigh_residual =
          std::sqrt(r2) / std::max(std::abs(lambda), kZeroEigenvalue);
      return res;
    }
    lambda_old = lambda;
    scale(w, 1.0 / std::sqrt(wnorm2));
    v = std::move(w);
  }
  // best estimate, flagged unconverged
  cvec w = apply_C(v);
  const double lambda = metric_inner(w, v).real();
  const double wnorm2 = std::max(0.0, metric_inner(w, w).real());
  res.value = lambda;
  res.converged = false;
  res.rayleigh_residual = std::sqrt(std::max(0.0, wnorm2 - lambda * lambda)) /
                          std::max(std::abs(lambda), kZeroEigenvalue);
  return res;
}

}  // namespace oras
