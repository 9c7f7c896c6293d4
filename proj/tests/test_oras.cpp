#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstring>
#include <memory>

#include "oracles.hpp"
#include "oras/assembly.hpp"
#include "oras/cover.hpp"
#include "oras/fe_space.hpp"
#include "oras/gmres.hpp"
#include "oras/mesh.hpp"
#include "oras/oras_operator.hpp"
#include "oras/problem_data.hpp"
#include "oras/types.hpp"
#include "oras/vector_ops.hpp"

using namespace oras;

namespace {

constexpr double kWave = 10.0;

Cover strip_fixture(int n_strips) {
  const int cells = 6;
  const int nx = n_strips * 4;  // 2/3 of a unit is 4 cells
  auto mesh = std::make_shared<RectMesh>(RectMesh::build_with_spacing(
      {0.0, 0.0}, nx, cells, 1.0 / cells, 1.0 / cells));
  auto space = std::make_shared<FeSpace>(mesh, 2);
  return strip_cover(space, n_strips);
}

Cover checkerboard_fixture(int n) {
  auto mesh = std::make_shared<RectMesh>(RectMesh::build({0, 0}, 1.0, 1.0, 8, 8));
  auto space = std::make_shared<FeSpace>(mesh, 2);
  return checkerboard_cover(space, n);
}

// Concatenated local restrictions (R v) and the weighted recombination
// (sum_l Rt_l^T w_l), the test-side halves of the block identities.
cvec block_restrict(const OrasOperator& op, const cvec& v) {
  cvec out;
  out.reserve(op.block_dim());
  for (std::size_t l = 0; l < op.cover().size(); ++l) {
    const cvec local = restrict(op.cover(), l, v);
    out.insert(out.end(), local.begin(), local.end());
  }
  return out;
}

cvec weighted_combine(const OrasOperator& op, const cvec& w) {
  cvec out(op.dim(), cplx(0.0, 0.0));
  std::size_t off = 0;
  for (std::size_t l = 0; l < op.cover().size(); ++l) {
    const std::size_t nl = op.cover().subdomains[l].node_ids.size();
    const cvec local(w.begin() + off, w.begin() + off + nl);
    const cvec ext = prolong_weighted(op.cover(), l, local);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += ext[p];
    off += nl;
  }
  return out;
}

bool bitwise_equal(const cvec& a, const cvec& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

double dense_norm_Es(const Cover& cover, double k, int s) {
  const Eigen::MatrixXcd E = oracle::dense_E(cover, k);
  const Eigen::MatrixXcd D = oracle::dense_metric(*cover.space, k);
  Eigen::MatrixXcd Es = Eigen::MatrixXcd::Identity(E.rows(), E.cols());
  for (int i = 0; i < s; ++i) Es = E * Es;
  const Eigen::MatrixXcd M = Es.adjoint() * D * Es;
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      (M + M.adjoint()) / 2.0, (D + D.adjoint()) / 2.0);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

TEST_SUITE("oras") {

TEST_CASE("constructor validates the cover and builds missing weights") {
  CHECK_THROWS_AS(OrasOperator(Cover{}, kWave), std::invalid_argument);

  Cover plain = strip_fixture(2);
  CHECK(plain.pou.empty());
  const OrasOperator op_auto(plain, kWave);

  Cover prebuilt = strip_fixture(2);
  build_pou(prebuilt);
  const OrasOperator op_pre(prebuilt, kWave);

  REQUIRE(op_auto.dim() == 221);
  const cvec r = oracle::random_cvec(op_auto.dim(), 3);
  CHECK(bitwise_equal(op_auto.apply_B_inverse(r), op_pre.apply_B_inverse(r)));

  CHECK(op_auto.k() == kWave);
  CHECK(op_auto.block_dim() ==
        op_auto.cover().subdomains[0].node_ids.size() +
            op_auto.cover().subdomains[1].node_ids.size());
}

TEST_CASE("preconditioner application is linear and matches the dense route") {
  for (bool strips : {true, false}) {
    const Cover cover = strips ? strip_fixture(2) : checkerboard_fixture(2);
    const OrasOperator op(cover, kWave);

    const cvec x = oracle::random_cvec(op.dim(), 5);
    const cvec y = oracle::random_cvec(op.dim(), 6);
    const cplx a(0.7, -1.2), b(-0.4, 0.3);

    cvec axby(op.dim());
    for (std::size_t i = 0; i < axby.size(); ++i) axby[i] = a * x[i] + b * y[i];
    const cvec lhs = op.apply_B_inverse(axby);
    const cvec bx = op.apply_B_inverse(x);
    const cvec by = op.apply_B_inverse(y);
    cvec rhs(op.dim());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = a * bx[i] + b * by[i];
    CHECK(oracle::rel_diff(lhs, rhs) < 1e-12);

    const Eigen::MatrixXcd Bd = oracle::dense_B_inverse(op.cover(), kWave);
    const Eigen::VectorXcd ref = Bd * oracle::to_eigen(x);
    CHECK(oracle::rel_diff(bx, oracle::from_eigen(ref)) < 1e-9);

    const cvec zero(op.dim(), 0.0);
    for (const cplx& v : op.apply_B_inverse(zero)) CHECK(v == cplx(0.0, 0.0));

    CHECK_THROWS_AS(op.apply_B_inverse(cvec(op.dim() + 1, 0.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("single-domain preconditioner is the exact inverse") {
  const OrasOperator op(strip_fixture(1), kWave);
  const cvec r = oracle::random_cvec(op.dim(), 7);
  const cvec u = op.apply_B_inverse(r);
  const cvec au = op.apply_A(u);
  CHECK(oracle::rel_diff(au, r) < 1e-10);

  // so the error propagation operator annihilates everything
  const cvec e = op.apply_E(r);
  CHECK(norm2(e) < 1e-10 * norm2(r));

  // and stationary iteration lands on the solution in one step
  const auto [its, trace] = op.richardson(r, cvec(op.dim(), 0.0), 1);
  (void)its;
  CHECK(trace.error_norms[1] < 1e-9 * trace.error_norms[0]);
}

TEST_CASE("error propagation operator matches the dense route") {
  const OrasOperator op(strip_fixture(2), kWave);
  const Eigen::MatrixXcd Ed = oracle::dense_E(op.cover(), kWave);

  const cvec v = oracle::random_cvec(op.dim(), 11);
  const cvec ev = op.apply_E(v);
  CHECK(oracle::rel_diff(ev, oracle::from_eigen((Ed * oracle::to_eigen(v)).eval())) <
        1e-9);

  const cvec zero(op.dim(), 0.0);
  for (const cplx& x : op.apply_E(zero)) CHECK(x == cplx(0.0, 0.0));

  // adjoint application matches the conjugate transpose
  const cvec w = oracle::random_cvec(op.dim(), 12);
  const cvec ew = op.apply_E_adjoint(w);
  CHECK(oracle::rel_diff(
            ew, oracle::from_eigen((Ed.adjoint() * oracle::to_eigen(w)).eval())) <
        1e-9);
  CHECK_THROWS_AS(op.apply_E_adjoint(cvec(2, 0.0)), std::invalid_argument);
}

TEST_CASE("adjoint identity holds for the euclidean inner product") {
  for (bool strips : {true, false}) {
    const Cover cover = strips ? strip_fixture(2) : checkerboard_fixture(2);
    const OrasOperator op(cover, kWave);
    for (unsigned seed = 0; seed < 20; ++seed) {
      const cvec x = oracle::random_cvec(op.dim(), 100 + seed);
      const cvec y = oracle::random_cvec(op.dim(), 200 + seed);
      const cplx lhs = dot(op.apply_E(x), y);
      const cplx rhs = dot(x, op.apply_E_adjoint(y));
      CHECK(std::abs(lhs - rhs) <= 1e-11 * (std::abs(lhs) + 1.0));
    }
  }
}

TEST_CASE("block operator reproduces error propagation powers") {
  for (bool strips : {true, false}) {
    const Cover cover = strips ? strip_fixture(2) : checkerboard_fixture(2);
    const OrasOperator op(cover, kWave);
    const cvec v = oracle::random_cvec(op.dim(), 31);

    cvec w = block_restrict(op, v);
    cvec ev = v;
    for (int s = 1; s <= 6; ++s) {
      w = op.apply_T_block(w);
      ev = op.apply_E(ev);
      const cvec recombined = weighted_combine(op, w);
      CHECK(oracle::rel_diff(recombined, ev) < 1e-9);
    }

    CHECK_THROWS_AS(op.apply_T_block(cvec(op.block_dim() + 3, 0.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("block operator is invariant under recombine-restrict") {
  const OrasOperator op(checkerboard_fixture(2), kWave);
  const cvec w = oracle::random_cvec(op.block_dim(), 41);
  const cvec direct = op.apply_T_block(w);
  const cvec roundtrip =
      op.apply_T_block(block_restrict(op, weighted_combine(op, w)));
  CHECK(oracle::rel_diff(roundtrip, direct) < 1e-11);
}

TEST_CASE("single-domain block operator is null") {
  const OrasOperator op(strip_fixture(1), kWave);
  const cvec w = oracle::random_cvec(op.block_dim(), 43);
  const cvec t = op.apply_T_block(w);
  CHECK(norm2(t) < 1e-10 * norm2(w));
}

TEST_CASE("stationary iteration follows the error recurrence") {
  const OrasOperator op(strip_fixture(2), kWave);
  const ProblemData data = plane_wave_data(kWave, {1.0, 0.0});
  const cvec f = assemble_load(*op.cover().space, data,
                               op.cover().space->mesh().boundary_edges());
  const cvec u0 = oracle::random_cvec(op.dim(), 51);
  const int n_steps = 4;

  const auto [iterates, trace] = op.richardson(f, u0, n_steps);
  REQUIRE(iterates.size() == std::size_t(n_steps) + 1);
  REQUIRE(trace.error_norms.size() == std::size_t(n_steps) + 1);
  REQUIRE(trace.residual_norms.size() == std::size_t(n_steps) + 1);

  // recorded residual of the initial guess
  {
    cvec r = op.apply_A(u0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f[i] - r[i];
    CHECK(trace.residual_norms[0] ==
          doctest::Approx(norm2(r)).epsilon(1e-12));
  }

  // u^{n+1} - u* = E (u^n - u*)
  const cvec u_star = op.solve_direct(f);
  cvec err(op.dim());
  for (std::size_t i = 0; i < err.size(); ++i) err[i] = u0[i] - u_star[i];
  for (int n = 1; n <= n_steps; ++n) {
    err = op.apply_E(err);
    cvec diff(op.dim());
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff[i] = iterates[n][i] - u_star[i];
    CHECK(oracle::rel_diff(diff, err) < 1e-10);
    CHECK(trace.error_norms[n] ==
          doctest::Approx(op.metric_norm(diff)).epsilon(1e-10));
  }

  // starting at the solution stays there
  const auto [fixed, ftrace] = op.richardson(f, u_star, 2);
  (void)fixed;
  CHECK(ftrace.error_norms[0] < 1e-11 * op.metric_norm(u_star));
  CHECK(ftrace.error_norms[2] < 1e-9 * op.metric_norm(u_star));

  CHECK_THROWS_AS(op.richardson(f, u0, 0), std::invalid_argument);
}

TEST_CASE("explicit residual correction equals one stationary step") {
  for (bool strips : {true, false}) {
    const Cover cover = strips ? strip_fixture(2) : checkerboard_fixture(2);
    const OrasOperator op(cover, kWave);
    const cvec f = oracle::random_cvec(op.dim(), 61);
    const cvec u0 = oracle::random_cvec(op.dim(), 62);

    const auto [iterates, trace] = op.richardson(f, u0, 1);
    const cvec stepped = op.residual_correction_step(u0, f);
    CHECK(oracle::rel_diff(stepped, iterates[1]) < 1e-12);

    // the exact solution is a fixed point
    const cvec u_star = op.solve_direct(f);
    const cvec stay = op.residual_correction_step(u_star, f);
    CHECK(oracle::rel_diff(stay, u_star) < 1e-10);

    // zero data, zero state stays exactly zero
    const cvec z(op.dim(), 0.0);
    for (const cplx& v : op.residual_correction_step(z, z))
      CHECK(v == cplx(0.0, 0.0));
  }
}

TEST_CASE("direct solve and metric agree with dense references") {
  const OrasOperator op(strip_fixture(2), kWave);
  const FeSpace& space = *op.cover().space;

  const cvec f = oracle::random_cvec(op.dim(), 71);
  const cvec u = op.solve_direct(f);
  const Eigen::MatrixXcd Ad =
      oracle::dense_helmholtz(space, kWave, space.mesh().boundary_edges());
  const Eigen::VectorXcd ref =
      Eigen::PartialPivLU<Eigen::MatrixXcd>(Ad).solve(oracle::to_eigen(f));
  CHECK(oracle::rel_diff(u, oracle::from_eigen(ref)) < 1e-9);

  const Eigen::MatrixXcd Dd = oracle::dense_metric(space, kWave);
  const cvec x = oracle::random_cvec(op.dim(), 72);
  const cvec y = oracle::random_cvec(op.dim(), 73);
  const cplx inner = op.metric_inner(x, y);
  const cplx dref =
      (oracle::to_eigen(y).adjoint() * (Dd * oracle::to_eigen(x)))(0, 0);
  CHECK(std::abs(inner - dref) < 1e-10 * std::abs(dref));
  CHECK(op.metric_norm(x) ==
        doctest::Approx(std::sqrt(op.metric_inner(x, x).real())).epsilon(1e-13));
}

TEST_CASE("norm estimator matches a dense eigensolve") {
  const OrasOperator op(strip_fixture(2), kWave);
  for (int s : {1, 2}) {
    const double dense = dense_norm_Es(op.cover(), kWave, s);
    const NormResult est = op.norm_E_power(s, 1e-10, 5000);
    CHECK(est.converged);
    // the Rayleigh quotient never exceeds the true norm
    CHECK(est.value <= dense * (1.0 + 1e-7));
    CHECK(est.value >= dense * (1.0 - 1e-4));
  }
}

TEST_CASE("norm estimator is submultiplicative and seed-stable") {
  const OrasOperator op(checkerboard_fixture(2), kWave);
  const double n1 = op.norm_E_power(1).value;
  const double n2 = op.norm_E_power(2).value;
  const double n3 = op.norm_E_power(3).value;
  CHECK(n2 <= n1 * n1 * (1.0 + 1e-6));
  CHECK(n3 <= n1 * n2 * (1.0 + 1e-6));

  const double alt = op.norm_E_power(1, 1e-8, 2000, 5).value;
  CHECK(alt == doctest::Approx(n1).epsilon(1e-6));

  const NormResult early = op.norm_E_power(1, 1e-12, 1);
  CHECK(!early.converged);
  CHECK(early.iterations == 1);

  CHECK_THROWS_AS(op.norm_E_power(0), std::invalid_argument);
}

TEST_CASE("preconditioned krylov solve converges quickly") {
  const OrasOperator op(strip_fixture(2), kWave);
  const ProblemData data = plane_wave_data(kWave, {1.0, 0.0});
  const cvec f = assemble_load(*op.cover().space, data,
                               op.cover().space->mesh().boundary_edges());

  const auto apply = [&op](const cvec& v) { return op.apply_A(v); };
  const auto precond = [&op](const cvec& v) { return op.apply_B_inverse(v); };
  const auto res = gmres(apply, precond, f, 1e-8, 200);
  REQUIRE(res.status == GmresStatus::converged);
  CHECK(res.iterations < 50);
  CHECK(oracle::rel_diff(res.solution, op.solve_direct(f)) < 1e-7);

  // one subdomain makes the preconditioner exact: one iteration
  const OrasOperator single(strip_fixture(1), kWave);
  const cvec f1 = assemble_load(*single.cover().space, data,
                                single.cover().space->mesh().boundary_edges());
  const auto res1 = gmres([&](const cvec& v) { return single.apply_A(v); },
                          [&](const cvec& v) { return single.apply_B_inverse(v); },
                          f1, 1e-8, 10);
  REQUIRE(res1.status == GmresStatus::converged);
  CHECK(res1.iterations == 1);
}

TEST_CASE("serial and parallel paths are bitwise identical") {
  OrasOperator op(checkerboard_fixture(2), kWave, Exec::openmp);
  const cvec v = oracle::random_cvec(op.dim(), 81);
  const cvec w = oracle::random_cvec(op.block_dim(), 82);

  const cvec b_par = op.apply_B_inverse(v);
  const cvec e_par = op.apply_E(v);
  const cvec a_par = op.apply_E_adjoint(v);
  const cvec t_par = op.apply_T_block(w);

  op.set_exec(Exec::serial);
  CHECK(op.exec() == Exec::serial);
  CHECK(bitwise_equal(op.apply_B_inverse(v), b_par));
  CHECK(bitwise_equal(op.apply_E(v), e_par));
  CHECK(bitwise_equal(op.apply_E_adjoint(v), a_par));
  CHECK(bitwise_equal(op.apply_T_block(w), t_par));
}

}  // TEST_SUITE
