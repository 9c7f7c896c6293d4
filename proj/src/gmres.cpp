#include "oras/gmres.hpp"

#include <cmath>
#include <stdexcept>

#include "oras/vector_ops.hpp"

namespace oras {

namespace {

constexpr double kBreakdownTol = 1e-14;

}  // namespace

GmresResult gmres(const LinearMap& apply_operator,
                  const LinearMap& apply_preconditioner, const cvec& b,
                  double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("gmres: tol must be positive");
  if (max_iter == 0) throw std::invalid_argument("gmres: max_iter must be >= 1");

  GmresResult res;
  const std::size_t n = b.size();
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    res.solution.assign(n, 0.0);
    res.status = GmresStatus::converged;
    res.residual_history = {0.0};
    return res;
  }

  const std::size_t m = max_iter;
  std::vector<cvec> V;
  V.reserve(m + 1);
  {
    cvec v0 = b;
    scale(v0, 1.0 / bnorm);
    V.push_back(std::move(v0));
  }

  // column-packed Hessenberg, plus Givens rotations applied on the fly
  std::vector<cvec> H;
  cvec cs(m), sn(m);
  cvec g(m + 1, 0.0);
  g[0] = bnorm;

  for (std::size_t j = 0; j < m; ++j) {
    cvec w = apply_operator(apply_preconditioner(V[j]));
    if (w.size() != n) throw std::invalid_argument("gmres: operator dimension mismatch");

    cvec hcol(j + 2, 0.0);
    for (std::size_t i = 0; i <= j; ++i) {
      hcol[i] = dot(w, V[i]);
      axpy(-hcol[i], V[i], w);
    }
    const double wnorm = norm2(w);
    hcol[j + 1] = wnorm;
    const bool breakdown = wnorm < kBreakdownTol;

    for (std::size_t i = 0; i < j; ++i) {
      const cplx t = std::conj(cs[i]) * hcol[i] + std::conj(sn[i]) * hcol[i + 1];
      hcol[i + 1] = -sn[i] * hcol[i] + cs[i] * hcol[i + 1];
      hcol[i] = t;
    }
    {
      const double denom = std::sqrt(std::norm(hcol[j]) + std::norm(hcol[j + 1]));
      if (denom == 0.0) {
        cs[j] = 1.0;
        sn[j] = 0.0;
      } else {
        cs[j] = hcol[j] / denom;
        sn[j] = hcol[j + 1] / denom;
      }
      hcol[j] = std::conj(cs[j]) * hcol[j] + std::conj(sn[j]) * hcol[j + 1];
      hcol[j + 1] = 0.0;
      const cplx t = std::conj(cs[j]) * g[j];
      g[j + 1] = -sn[j] * g[j];
      g[j] = t;
    }
    H.push_back(std::move(hcol));

    // candidate solution and its true residual
    cvec y(j + 1);
    for (std::size_t ii = j + 1; ii-- > 0;) {
      cplx s = g[ii];
      for (std::size_t c = ii + 1; c <= j; ++c) s -= H[c][ii] * y[c];
      y[ii] = s / H[ii][ii];
    }
    cvec z(n, 0.0);
    for (std::size_t c = 0; c <= j; ++c) axpy(y[c], V[c], z);
    cvec x = apply_preconditioner(z);
    cvec r = apply_operator(x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double rel = norm2(r) / bnorm;

    res.residual_history.push_back(rel);
    res.solution = std::move(x);
    res.iterations = j + 1;

    if (rel <= tol) {
      res.status = GmresStatus::converged;
      return res;
    }
    if (breakdown) {
      res.status = GmresStatus::breakdown;
      return res;
    }
    if (j + 1 < m) {
      cvec vnext = std::move(w);
      scale(vnext, 1.0 / wnorm);
      V.push_back(std::move(vnext));
    }
  }
  res.status = GmresStatus::max_iterations;
  return res;
}

GmresResult gmres(const LinearMap& apply_operator, const cvec& b, double tol,
                  std::size_t max_iter) {
  return gmres(apply_operator, [](const cvec& v) { return v; }, b, tol, max_iter);
}

}  // namespace oras
