#include "oras/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

#include "oras/assembly.hpp"
#include "oras/gmres.hpp"
#include "oras/problem_data.hpp"
#include "oras/vector_ops.hpp"

namespace oras {

namespace {

constexpr double kNormTol = 1e-8;
constexpr std::size_t kNormMaxIter = 2000;
constexpr std::size_t kGmresMaxIter = 200;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<int> default_powers_table1(int n_sub) {
  std::set<int> s{1, n_sub - 1, n_sub};
  if (n_sub == 2) s.insert(3);
  std::vector<int> out;
  for (int p : s)
    if (p >= 1) out.push_back(p);
  return out;
}

std::vector<int> default_powers_table2(int n_sub) {
  const int s = n_sub * n_sub;
  std::vector<int> out;
  if (s - 1 >= 1) out.push_back(s - 1);
  out.push_back(s);
  return out;
}

void write_norm_header(std::ostream& csv) {
  csv << "geometry,k,N,s,norm,status\n";
}

void write_norm_row(std::ostream& csv, Geometry g, double k, int n_sub, int s,
                    const NormResult& nr) {
  csv << geometry_name(g) << ',' << fmt(k) << ',' << n_sub << ',' << s << ','
      << fmt(nr.value) << ',' << (nr.converged ? "ok" : "!") << '\n';
}

void log_instance(std::ostream& log, const ExperimentConfig& cfg, double k,
                  int n_sub, const GeometryInstance& geom) {
  log << geometry_name(cfg.geometry) << " k=" << fmt(k) << " N=" << n_sub
      << " cells_per_unit=" << geom.cells_per_unit
      << " dofs=" << geom.space->num_nodes() << "\n";
}

GmresResult solve_plane_wave(const OrasOperator& op, double gmres_tol) {
  const FeSpace& space = *op.cover().space;
  const ProblemData data = plane_wave_data(op.k(), {1.0, 0.0});
  const cvec rhs =
      assemble_load(space, data, space.mesh().boundary_edges());
  auto apply_op = [&op](const cvec& v) { return op.apply_A(v); };
  auto apply_prec = [&op](const cvec& v) { return op.apply_B_inverse(v); };
  return gmres(apply_op, apply_prec, rhs, gmres_tol, kGmresMaxIter);
}

}  // namespace

const char* geometry_name(Geometry g) {
  return g == Geometry::strip ? "strip" : "checkerboard";
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.ks.empty()) throw std::invalid_argument("no wavenumbers given");
  for (double k : cfg.ks) {
    if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  }
  if (cfg.ns.empty()) throw std::invalid_argument("no subdomain counts given");
  for (int n : cfg.ns) {
    if (n < 1) throw std::invalid_argument("N must be at least 1");
  }
  if (cfg.degree != 1 && cfg.degree != 2) {
    throw std::invalid_argument("degree must be 1 or 2");
  }
  if (!(cfg.mesh_constant > 0.0)) {
    throw std::invalid_argument("mesh constant must be positive");
  }
  if (!(cfg.gmres_tol > 0.0) || !(cfg.gmres_tol < 1.0)) {
    throw std::invalid_argument("gmres tolerance must lie in (0,1)");
  }
  for (int p : cfg.powers) {
    if (p < 1) throw std::invalid_argument("powers must be at least 1");
  }
}

GeometryInstance build_geometry(const ExperimentConfig& cfg, double k, int n_sub) {
  const double ov = cfg.overlap_or_default();
  const int n_min = mesh_size_for_wavenumber(k, cfg.degree, cfg.mesh_constant);

  GeometryInstance geom;
  std::shared_ptr<RectMesh> mesh;
  if (cfg.geometry == Geometry::strip) {
    const double lengths[2] = {2.0 / 3.0, ov};
    const int n = align_cells_per_unit(n_min, lengths);
    const int nx = static_cast<int>(std::llround(n * n_sub * 2.0 / 3.0));
    mesh = std::make_shared<RectMesh>(
        RectMesh::build_with_spacing({0.0, 0.0}, nx, n, 1.0 / n, 1.0 / n));
    geom.cells_per_unit = n;
  } else {
    const double lengths[2] = {1.0 / n_sub, ov / n_sub};
    const int n = align_cells_per_unit(n_min, lengths);
    mesh = std::make_shared<RectMesh>(
        RectMesh::build_with_spacing({0.0, 0.0}, n, n, 1.0 / n, 1.0 / n));
    geom.cells_per_unit = n;
  }
  geom.space = std::make_shared<FeSpace>(mesh, cfg.degree);
  geom.cover = cfg.geometry == Geometry::strip
                   ? strip_cover(geom.space, n_sub, ov)
                   : checkerboard_cover(geom.space, n_sub, ov);
  build_pou(geom.cover);
  return geom;
}

std::unique_ptr<OrasOperator> build_operator(GeometryInstance&& geom, double k,
                                             Exec exec) {
  return std::make_unique<OrasOperator>(std::move(geom.cover), k, exec);
}

void run_table1(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log) {
  validate_config(cfg);
  if (cfg.geometry != Geometry::strip) {
    throw std::invalid_argument("table1 requires strip geometry");
  }
  write_norm_header(csv);
  for (double k : cfg.ks) {
    for (int n_sub : cfg.ns) {
      GeometryInstance geom = build_geometry(cfg, k, n_sub);
      log_instance(log, cfg, k, n_sub, geom);
      auto op = build_operator(std::move(geom), k);
      const std::vector<int> powers =
          cfg.powers.empty() ? default_powers_table1(n_sub) : cfg.powers;
      for (int s : powers) {
        const NormResult nr = op->norm_E_power(s, kNormTol, kNormMaxIter, cfg.seed);
        write_norm_row(csv, cfg.geometry, k, n_sub, s, nr);
        log << "  norm(E^" << s << ") = " << fmt(nr.value)
            << (nr.converged ? "" : "  (power iteration not converged)") << "\n";
      }
    }
  }
}

void run_table2(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log) {
  validate_config(cfg);
  if (cfg.geometry != Geometry::checkerboard) {
    throw std::invalid_argument("table2 requires checkerboard geometry");
  }
  write_norm_header(csv);
  for (double k : cfg.ks) {
    for (int n_sub : cfg.ns) {
      GeometryInstance geom = build_geometry(cfg, k, n_sub);
      log_instance(log, cfg, k, n_sub, geom);
      auto op = build_operator(std::move(geom), k);
      const std::vector<int> powers =
          cfg.powers.empty() ? default_powers_table2(n_sub) : cfg.powers;
      for (int s : powers) {
        const NormResult nr = op->norm_E_power(s, kNormTol, kNormMaxIter, cfg.seed);
        write_norm_row(csv, cfg.geometry, k, n_sub, s, nr);
        log << "  norm(E^" << s << ") = " << fmt(nr.value)
            << (nr.converged ? "" : "  (power iteration not converged)") << "\n";
      }
      // Solver-path row: s column 0, iteration count in the norm column.
      const GmresResult res = solve_plane_wave(*op, cfg.gmres_tol);
      csv << geometry_name(cfg.geometry) << ',' << fmt(k) << ',' << n_sub
          << ",0," << res.iterations << ",gmres\n";
      log << "  gmres iterations = " << res.iterations
          << (res.status == GmresStatus::converged ? "" : "  (not converged)")
          << "\n";
    }
  }
}

void run_fig1(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log) {
  validate_config(cfg);
  if (cfg.geometry != Geometry::checkerboard) {
    throw std::invalid_argument("fig1 requires checkerboard geometry");
  }
  std::vector<int> powers = cfg.powers;
  if (powers.empty()) {
    for (int s = 1; s <= 8; ++s) powers.push_back(s);
  }
  write_norm_header(csv);
  for (double k : cfg.ks) {
    for (int n_sub : cfg.ns) {
      GeometryInstance geom = build_geometry(cfg, k, n_sub);
      log_instance(log, cfg, k, n_sub, geom);
      auto op = build_operator(std::move(geom), k);
      int smallest = -1;
      for (int s : powers) {
        const NormResult nr = op->norm_E_power(s, kNormTol, kNormMaxIter, cfg.seed);
        write_norm_row(csv, cfg.geometry, k, n_sub, s, nr);
        log << "  norm(E^" << s << ") = " << fmt(nr.value)
            << (nr.converged ? "" : "  (power iteration not converged)") << "\n";
        if (smallest < 0 && nr.value < 1.0) smallest = s;
      }
      log << "k=" << fmt(k) << " N=" << n_sub
          << ": smallest s with norm(E^s) < 1: ";
      if (smallest > 0) {
        log << smallest << "\n";
      } else {
        log << "none within powers\n";
      }
    }
  }
}

void run_solve(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log,
               std::ostream* solution_dump) {
  validate_config(cfg);
  csv << "geometry,k,N,dofs,iters,residual,l2err\n";
  for (double k : cfg.ks) {
    for (int n_sub : cfg.ns) {
      GeometryInstance geom = build_geometry(cfg, k, n_sub);
      log_instance(log, cfg, k, n_sub, geom);
      auto space = geom.space;
      auto op = build_operator(std::move(geom), k);
      const GmresResult res = solve_plane_wave(*op, cfg.gmres_tol);

      const auto exact = plane_wave(k, {1.0, 0.0});
      const double abs_err = l2_error(*space, res.solution, exact);
      const double rel_err = abs_err / l2_norm(*space, exact);
      const double resid =
          res.residual_history.empty() ? 0.0 : res.residual_history.back();

      csv << geometry_name(cfg.geometry) << ',' << fmt(k) << ',' << n_sub << ','
          << space->num_nodes() << ',' << res.iterations << ',' << fmt(resid)
          << ',' << fmt(rel_err) << '\n';
      log << "  iterations=" << res.iterations << " residual=" << fmt(resid)
          << " rel_l2_error=" << fmt(rel_err) << "\n";
      if (res.status != GmresStatus::converged) {
        log << "  gmres did not reach tol " << fmt(cfg.gmres_tol)
            << "; residual history:\n";
        for (std::size_t i = 0; i < res.residual_history.size(); ++i) {
          log << "    " << (i + 1) << " " << fmt(res.residual_history[i]) << "\n";
        }
      }
      if (solution_dump) {
        *solution_dump << "# " << geometry_name(cfg.geometry) << " k=" << fmt(k)
                       << " N=" << n_sub << "\n";
        solution_dump->precision(17);
        for (std::size_t j = 0; j < space->num_nodes(); ++j) {
          const Point p = space->node_coord(j);
          *solution_dump << p.x << ' ' << p.y << ' ' << res.solution[j].real()
                         << ' ' << res.solution[j].imag() << '\n';
        }
      }
    }
  }
}

void run_describe(const ExperimentConfig& cfg, std::ostream& out) {
  validate_config(cfg);
  out << "geometry=" << geometry_name(cfg.geometry) << " degree=" << cfg.degree
      << " mesh_constant=" << fmt(cfg.mesh_constant)
      << " overlap=" << fmt(cfg.overlap_or_default())
      << " gmres_tol=" << fmt(cfg.gmres_tol) << " seed=" << cfg.seed << "\n";
  for (double k : cfg.ks) {
    for (int n_sub : cfg.ns) {
      const GeometryInstance geom = build_geometry(cfg, k, n_sub);
      const RectMesh& mesh = geom.space->mesh();
      out << "instance k=" << fmt(k) << " N=" << n_sub
          << ": cells_per_unit=" << geom.cells_per_unit
          << " h=" << fmt(mesh.hx()) << " mesh=" << mesh.nx() << "x" << mesh.ny()
          << " dofs=" << geom.space->num_nodes() << "\n";
      geom.cover.dump_summary(out);
    }
  }
}

}  // namespace oras
