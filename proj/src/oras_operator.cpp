#include "oras/oras_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "oras/assembly.hpp"
#include "oras/power_iteration.hpp"
#include "oras/vector_ops.hpp"

namespace oras {

OrasOperator::OrasOperator(Cover cover, double k, Exec exec)
    : cover_(std::move(cover)), k_(k), exec_(exec) {
  if (cover_.subdomains.empty()) {
    throw std::invalid_argument("OrasOperator: cover has no subdomains");
  }
  if (cover_.pou.size() != cover_.subdomains.size()) {
    build_pou(cover_);
  }
  const FeSpace& space = *cover_.space;
  a_ = assemble_helmholtz(space, k_, space.mesh().boundary_edges());
  dk_ = assemble_metric_dk(space, k_);
  dk_chol_ = real_spd_factorize(dk_);

  local_lu_.reserve(cover_.size());
  block_offsets_.reserve(cover_.size() + 1);
  block_offsets_.push_back(0);
  for (const Subdomain& sd : cover_.subdomains) {
    const FeSpace& ls = *sd.local_space;
    ComplexSparseMatrix al =
        assemble_helmholtz(ls, k_, ls.mesh().boundary_edges());
    try {
      local_lu_.push_back(band_factorize(al));
    } catch (const SingularMatrixError& e) {
      throw SingularMatrixError("subdomain " + std::to_string(sd.id) + ": " +
                                e.what());
    }
    block_offsets_.push_back(block_offsets_.back() + sd.node_ids.size());
  }
}

const BandFactorization& OrasOperator::global_lu() const {
  if (!a_lu_) {
    a_lu_ = std::make_unique<BandFactorization>(band_factorize(a_));
  }
  return *a_lu_;
}

cvec OrasOperator::apply_A(const cvec& v) const { return spmv(a_, v, exec_); }

std::vector<cvec> OrasOperator::local_solves(const cvec& r) const {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(cover_.size());
  std::vector<cvec> sol(cover_.size());
  if (exec_ == Exec::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t l = 0; l < n; ++l) {
      sol[l] = local_lu_[l].solve(restrict(cover_, l, r));
    }
  } else {
    for (std::ptrdiff_t l = 0; l < n; ++l) {
      sol[l] = local_lu_[l].solve(restrict(cover_, l, r));
    }
  }
  return sol;
}

cvec OrasOperator::apply_B_inverse(const cvec& r) const {
  if (r.size() != dim()) {
    throw std::invalid_argument("apply_B_inverse: size mismatch");
  }
  const std::vector<cvec> sol = local_solves(r);
  cvec out(dim(), cplx(0.0, 0.0));
  for (std::size_t l = 0; l < cover_.size(); ++l) {
    const Subdomain& sd = cover_.subdomains[l];
    const rvec& chi = cover_.pou[l];
    for (std::size_t m = 0; m < sd.node_ids.size(); ++m) {
      out[sd.node_ids[m]] += chi[m] * sol[l][m];
    }
  }
  return out;
}

cvec OrasOperator::apply_E(const cvec& v) const {
  cvec w = apply_B_inverse(spmv(a_, v, exec_));
  cvec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - w[i];
  return out;
}

cvec OrasOperator::apply_E_adjoint(const cvec& v) const {
  if (v.size() != dim()) {
    throw std::invalid_argument("apply_E_adjoint: size mismatch");
  }
  // (B^{-1})^H v = sum_l R_l^T (A_l^{-1})^H (chi_l .* R_l v).
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(cover_.size());
  std::vector<cvec> sol(cover_.size());
  auto adjoint_solve = [&](std::ptrdiff_t l) {
    cvec t = restrict(cover_, l, v);
    const rvec& chi = cover_.pou[l];
    for (std::size_t m = 0; m < t.size(); ++m) {
      t[m] = std::conj(chi[m] * t[m]);
    }
    sol[l] = conjugated(local_lu_[l].solve(t));
  };
  if (exec_ == Exec::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t l = 0; l < n; ++l) adjoint_solve(l);
  } else {
    for (std::ptrdiff_t l = 0; l < n; ++l) adjoint_solve(l);
  }
  cvec acc(dim(), cplx(0.0, 0.0));
  for (std::size_t l = 0; l < cover_.size(); ++l) {
    const Subdomain& sd = cover_.subdomains[l];
    for (std::size_t m = 0; m < sd.node_ids.size(); ++m) {
      acc[sd.node_ids[m]] += sol[l][m];
    }
  }
  const cvec w = spmv_conjugate_transpose(a_, acc, exec_);
  cvec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - w[i];
  return out;
}

cvec OrasOperator::apply_T_block(const cvec& w) const {
  if (w.size() != block_dim()) {
    throw std::invalid_argument("apply_T_block: size mismatch");
  }
  cvec g(dim(), cplx(0.0, 0.0));
  for (std::size_t l = 0; l < cover_.size(); ++l) {
    const Subdomain& sd = cover_.subdomains[l];
    const rvec& chi = cover_.pou[l];
    const cplx* wl = w.data() + block_offsets_[l];
    for (std::size_t m = 0; m < sd.node_ids.size(); ++m) {
      g[sd.node_ids[m]] += chi[m] * wl[m];
    }
  }
  const cvec ag = spmv(a_, g, exec_);

  cvec out(block_dim());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(cover_.size());
  auto block = [&](std::ptrdiff_t l) {
    const cvec rg = restrict(cover_, l, g);
    const cvec sol = local_lu_[l].solve(restrict(cover_, l, ag));
    cplx* ol = out.data() + block_offsets_[l];
    for (std::size_t m = 0; m < rg.size(); ++m) ol[m] = rg[m] - sol[m];
  };
  if (exec_ == Exec::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t l = 0; l < n; ++l) block(l);
  } else {
    for (std::ptrdiff_t l = 0; l < n; ++l) block(l);
  }
  return out;
}

cplx OrasOperator::metric_inner(const cvec& x, const cvec& y) const {
  return dot(spmv(dk_, x, exec_), y);
}

double OrasOperator::metric_norm(const cvec& x) const {
  return std::sqrt(std::max(0.0, metric_inner(x, x).real()));
}

cvec OrasOperator::solve_direct(const cvec& f) const {
  return global_lu().solve(f);
}

std::pair<std::vector<cvec>, IterationTrace> OrasOperator::richardson(
    const cvec& f, const cvec& u0, int n_steps) const {
  if (n_steps < 1) {
    throw std::invalid_argument("richardson: n_steps must be >= 1");
  }
  const cvec u_star = solve_direct(f);

  std::vector<cvec> iterates;
  iterates.reserve(n_steps + 1);
  iterates.push_back(u0);
  IterationTrace trace;
  trace.error_norms.reserve(n_steps + 1);
  trace.residual_norms.reserve(n_steps + 1);

  for (int n = 0; n <= n_steps; ++n) {
    const cvec& u = iterates[n];
    cvec r = spmv(a_, u, exec_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f[i] - r[i];
    trace.residual_norms.push_back(norm2(r));
    cvec diff(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - u_star[i];
    trace.error_norms.push_back(metric_norm(diff));
    if (n < n_steps) {
      const cvec corr = apply_B_inverse(r);
      cvec next(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) next[i] = u[i] + corr[i];
      iterates.push_back(std::move(next));
    }
  }
  return {std::move(iterates), std::move(trace)};
}

cvec OrasOperator::residual_correction_step(const cvec& u_n, const cvec& f) const {
  cvec r = spmv(a_, u_n, exec_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f[i] - r[i];

  cvec out = u_n;
  for (std::size_t l = 0; l < cover_.size(); ++l) {
    const Subdomain& sd = cover_.subdomains[l];
    const rvec& chi = cover_.pou[l];
    const cvec delta = local_lu_[l].solve(restrict(cover_, l, r));
    for (std::size_t m = 0; m < sd.node_ids.size(); ++m) {
      out[sd.node_ids[m]] += chi[m] * delta[m];
    }
  }
  return out;
}

NormResult OrasOperator::norm_E_power(int s, double tol, std::size_t max_iter,
                                      unsigned seed) const {
  if (s < 1) throw std::invalid_argument("norm_E_power: s must be >= 1");
  auto apply_C = [this, s](const cvec& v) {
    cvec u = v;
    for (int i = 0; i < s; ++i) u = apply_E(u);
    u = spmv(dk_, u, exec_);
    for (int i = 0; i < s; ++i) u = apply_E_adjoint(u);
    return dk_chol_.solve(u);
  };
  auto inner = [this](const cvec& x, const cvec& y) {
    return metric_inner(x, y);
  };
  const PowerIterationResult pr =
      power_iteration_generalized(apply_C, inner, dim(), tol, max_iter, seed);
  NormResult out;
  out.value = std::sqrt(std::max(0.0, pr.value));
  out.iterations = pr.iterations;
  out.converged = pr.converged;
  out.rayleigh_residual = pr.rayleigh_residual;
  return out;
}

}  // namespace oras
