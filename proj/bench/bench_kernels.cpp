// Compares the serial reference kernels against the OpenMP ones on a single
// problem instance: same inputs, timed repeatedly, and checked for bitwise
// agreement (the parallel paths keep the serial accumulation order).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oras/experiment.hpp"
#include "oras/vector_ops.hpp"

namespace {

using oras::cplx;
using oras::cvec;

cvec probe_vector(std::size_t n) {
  cvec v(n);
  // Fixed quasi-random entries, no library RNG needed for a benchmark probe.
  double a = 0.5, b = 0.25;
  for (std::size_t i = 0; i < n; ++i) {
    a = a * 997.0 + 1.0;
    a -= static_cast<long long>(a / 720.0) * 720.0;
    b = b * 991.0 + 3.0;
    b -= static_cast<long long>(b / 720.0) * 720.0;
    v[i] = cplx(a / 360.0 - 1.0, b / 360.0 - 1.0);
  }
  return v;
}

template <typename F>
double best_ms(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

bool bitwise_equal(const cvec& x, const cvec& y) {
  return x.size() == y.size() &&
         std::memcmp(x.data(), y.data(), x.size() * sizeof(cplx)) == 0;
}

void report(const char* name, double serial_ms, double openmp_ms, bool equal) {
  std::printf("%-18s %10.3f %10.3f %8.2fx   %s\n", name, serial_ms, openmp_ms,
              serial_ms / openmp_ms, equal ? "bitwise equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  oras::ExperimentConfig cfg;
  cfg.geometry = oras::Geometry::checkerboard;
  cfg.ks = {20.0};
  cfg.ns = {4};
  int reps = 20;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&](const char* what) -> std::string {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value for %s\n", what);
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--k") {
      cfg.ks = {std::stod(next("--k"))};
    } else if (arg == "--n") {
      cfg.ns = {std::stoi(next("--n"))};
    } else if (arg == "--geometry") {
      const std::string g = next("--geometry");
      cfg.geometry = g == "strip" ? oras::Geometry::strip
                                  : oras::Geometry::checkerboard;
    } else if (arg == "--reps") {
      reps = std::stoi(next("--reps"));
    } else {
      std::fprintf(stderr,
                   "usage: oras2d_bench [--k <real>] [--n <count>] "
                   "[--geometry strip|checkerboard] [--reps <count>]\n");
      return 2;
    }
  }

  oras::GeometryInstance geom = oras::build_geometry(cfg, cfg.ks[0], cfg.ns[0]);
  std::printf("instance: %s k=%g N=%d dofs=%zu subdomains=%zu\n",
              oras::geometry_name(cfg.geometry), cfg.ks[0], cfg.ns[0],
              geom.space->num_nodes(), geom.cover.size());
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled at build time\n");
#endif
  auto op = oras::build_operator(std::move(geom), cfg.ks[0]);
  const cvec v = probe_vector(op->dim());

  std::printf("%-18s %10s %10s %9s\n", "kernel", "serial ms", "openmp ms",
              "speedup");

  {
    cvec ys, yp;
    const double ts = best_ms(
        [&] { ys = spmv(op->matrix(), v, oras::Exec::serial); }, reps);
    const double tp = best_ms(
        [&] { yp = spmv(op->matrix(), v, oras::Exec::openmp); }, reps);
    report("spmv", ts, tp, bitwise_equal(ys, yp));
  }
  {
    cvec ys, yp;
    op->set_exec(oras::Exec::serial);
    const double ts = best_ms([&] { ys = op->apply_B_inverse(v); }, reps);
    op->set_exec(oras::Exec::openmp);
    const double tp = best_ms([&] { yp = op->apply_B_inverse(v); }, reps);
    report("apply_B_inverse", ts, tp, bitwise_equal(ys, yp));
  }
  {
    cvec ys, yp;
    op->set_exec(oras::Exec::serial);
    const double ts = best_ms([&] { ys = op->apply_E(v); }, reps);
    op->set_exec(oras::Exec::openmp);
    const double tp = best_ms([&] { yp = op->apply_E(v); }, reps);
    report("apply_E", ts, tp, bitwise_equal(ys, yp));
  }
  {
    const cvec w = probe_vector(op->block_dim());
    cvec ys, yp;
    op->set_exec(oras::Exec::serial);
    const double ts = best_ms([&] { ys = op->apply_T_block(w); }, reps);
    op->set_exec(oras::Exec::openmp);
    const double tp = best_ms([&] { yp = op->apply_T_block(w); }, reps);
    report("apply_T_block", ts, tp, bitwise_equal(ys, yp));
  }
  return 0;
}
