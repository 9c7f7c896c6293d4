#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "oras/cover.hpp"
#include "oras/oras_operator.hpp"

namespace oras {

enum class Geometry { strip, checkerboard };

const char* geometry_name(Geometry g);

/// Parameter set for the experiment runners. `ks` and `ns` hold the
/// (wavenumber, subdomain count) grid; each runner loops over the product.
/// A negative overlap selects the geometry default: absolute width 1/6 for
/// strips, fraction 1/4 of the cell width for checkerboards.
struct ExperimentConfig {
  Geometry geometry = Geometry::strip;
  std::vector<double> ks;
  std::vector<int> ns;
  int degree = 2;
  double mesh_constant = 1.3;
  double overlap = -1.0;
  std::vector<int> powers;  // empty: runner-specific default
  double gmres_tol = 1e-6;
  std::string output_path;  // empty: stdout
  unsigned seed = 7;

  double overlap_or_default() const {
    if (overlap >= 0.0) return overlap;
    return geometry == Geometry::strip ? 1.0 / 6.0 : 0.25;
  }
};

/// Throws std::invalid_argument with a message on bad parameters.
void validate_config(const ExperimentConfig& cfg);

/// Mesh + cover for one (k, N) cell, before any factorization.
struct GeometryInstance {
  std::shared_ptr<const FeSpace> space;
  Cover cover;
  int cells_per_unit = 0;
};

/// Builds the mesh from the wavenumber rule (h ~ mesh_constant * k^(-5/4),
/// rounded up so subdomain edges and overlaps fall on mesh lines), the FE
/// space, the cover, and the partition of unity.
GeometryInstance build_geometry(const ExperimentConfig& cfg, double k, int n_sub);

/// Factorizes everything; consumes the geometry instance.
std::unique_ptr<OrasOperator> build_operator(GeometryInstance&& geom, double k,
                                             Exec exec = Exec::openmp);

// Experiment runners. CSV goes to `csv` with a header row and columns
// `geometry,k,N,s,norm,status` (norm tables) or
// `geometry,k,N,dofs,iters,residual,l2err` (solve); progress and summary
// lines go to `log`.

/// Norms of powers of the error propagation operator on the strip
/// partition; default powers are {1, N-1, N} plus N+1 when N = 2.
void run_table1(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log);

/// Checkerboard norms with default powers {N^2-1, N^2}, plus one GMRES row
/// per cell (s column 0, status "gmres", norm column = iteration count) for
/// the plane-wave impedance problem.
void run_table2(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log);

/// Norm of E^s over a range of powers (default 1..8) on the checkerboard;
/// logs the smallest s with norm below 1.
void run_fig1(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log);

/// Solves the plane-wave problem with ORAS-preconditioned GMRES and reports
/// size, iteration count, final true residual, and relative L2 error
/// against the exact plane wave. Optionally dumps the solution nodewise as
/// "x y re im" lines.
void run_solve(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log,
               std::ostream* solution_dump = nullptr);

/// Prints the resolved configuration, mesh sizes, and cover layout without
/// factorizing anything.
void run_describe(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace oras
