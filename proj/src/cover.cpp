#include "oras/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace oras {

namespace {

// Length expressed in whole cells, rejecting misaligned geometry.
int cells_of(double length, double h, const char* what) {
  const double real = length / h;
  const long long n = std::llround(real);
  if (n < 0 || std::abs(real - static_cast<double>(n)) > 1e-6) {
    throw AlignmentError(std::string(what) +
                         " is not a whole number of mesh cells");
  }
  return static_cast<int>(n);
}

Subdomain make_subdomain(const std::shared_ptr<const FeSpace>& space,
                         std::size_t id, int i0, int j0, int ncx, int ncy) {
  const RectMesh& gmesh = space->mesh();
  const int gnx = gmesh.nx();
  const int gny = gmesh.ny();
  const int deg = space->degree();

  Subdomain sd;
  sd.id = id;
  sd.cell_i0 = i0;
  sd.cell_j0 = j0;
  sd.cells_x = ncx;
  sd.cells_y = ncy;

  sd.element_ids.reserve(static_cast<std::size_t>(ncx) * ncy * 2);
  for (int cj = j0; cj < j0 + ncy; ++cj) {
    for (int ci = i0; ci < i0 + ncx; ++ci) {
      const std::size_t base =
          2 * (static_cast<std::size_t>(cj) * gnx + static_cast<std::size_t>(ci));
      sd.element_ids.push_back(base);
      sd.element_ids.push_back(base + 1);
    }
  }

  // Local lexicographic node order coincides with ascending global index.
  sd.node_ids.reserve(static_cast<std::size_t>(deg * ncx + 1) * (deg * ncy + 1));
  for (int jj = deg * j0; jj <= deg * (j0 + ncy); ++jj) {
    for (int ii = deg * i0; ii <= deg * (i0 + ncx); ++ii) {
      sd.node_ids.push_back(space->node_index(ii, jj));
    }
  }

  const Point local_origin{gmesh.origin().x + i0 * gmesh.hx(),
                           gmesh.origin().y + j0 * gmesh.hy()};
  auto submesh = std::make_shared<RectMesh>(RectMesh::build_with_spacing(
      local_origin, ncx, ncy, gmesh.hx(), gmesh.hy()));
  sd.local_space = std::make_shared<FeSpace>(submesh, deg);

  for (const BoundaryEdge& e : submesh->boundary_edges()) {
    bool physical = false;
    switch (e.side) {
      case Side::left: physical = (i0 == 0); break;
      case Side::right: physical = (i0 + ncx == gnx); break;
      case Side::bottom: physical = (j0 == 0); break;
      case Side::top: physical = (j0 + ncy == gny); break;
    }
    (physical ? sd.physical_edges : sd.interface_edges).push_back(e);
  }
  return sd;
}

}  // namespace

void Cover::dump_summary(std::ostream& os) const {
  os << "subdomains " << subdomains.size() << "\n";
  for (const Subdomain& sd : subdomains) {
    os << "subdomain " << sd.id << " box [" << sd.x0() << "," << sd.x1()
       << "]x[" << sd.y0() << "," << sd.y1() << "] cells " << sd.cells_x << "x"
       << sd.cells_y << " nodes " << sd.node_ids.size() << " elements "
       << sd.element_ids.size() << " interface_edges "
       << sd.interface_edges.size() << "\n";
  }
}

Cover strip_cover(std::shared_ptr<const FeSpace> space, int n_strips,
                  double overlap) {
  if (n_strips < 1) throw std::invalid_argument("strip_cover: N must be >= 1");
  const RectMesh& mesh = space->mesh();
  const int w = cells_of(2.0 / 3.0, mesh.hx(), "strip width 2/3");
  const int o = cells_of(overlap, mesh.hx(), "overlap");
  if (w == 0) throw AlignmentError("strip width 2/3 is below one mesh cell");
  if (mesh.nx() != n_strips * w) {
    throw AlignmentError("mesh width does not equal N strips of width 2/3");
  }

  Cover cover;
  cover.space = std::move(space);
  cover.subdomains.reserve(n_strips);
  for (int l = 0; l < n_strips; ++l) {
    const int lo = std::max(0, l * w - o);
    const int hi = std::min(mesh.nx(), (l + 1) * w + o);
    cover.subdomains.push_back(
        make_subdomain(cover.space, static_cast<std::size_t>(l), lo, 0,
                       hi - lo, mesh.ny()));
  }
  return cover;
}

Cover checkerboard_cover(std::shared_ptr<const FeSpace> space, int n,
                         double overlap_fraction) {
  if (n < 1) throw std::invalid_argument("checkerboard_cover: N must be >= 1");
  const RectMesh& mesh = space->mesh();
  const int wx = cells_of(mesh.width() / n, mesh.hx(), "cell width 1/N");
  const int wy = cells_of(mesh.height() / n, mesh.hy(), "cell height 1/N");
  if (wx == 0 || wy == 0 || mesh.nx() != n * wx || mesh.ny() != n * wy) {
    throw AlignmentError("mesh does not split into N x N equal cells");
  }
  const int ox = cells_of(overlap_fraction * mesh.width() / n, mesh.hx(),
                          "overlap extension");
  const int oy = cells_of(overlap_fraction * mesh.height() / n, mesh.hy(),
                          "overlap extension");

  Cover cover;
  cover.space = std::move(space);
  cover.subdomains.reserve(static_cast<std::size_t>(n) * n);
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < n; ++p) {
      const int ilo = std::max(0, p * wx - ox);
      const int ihi = std::min(mesh.nx(), (p + 1) * wx + ox);
      const int jlo = std::max(0, q * wy - oy);
      const int jhi = std::min(mesh.ny(), (q + 1) * wy + oy);
      cover.subdomains.push_back(
          make_subdomain(cover.space, static_cast<std::size_t>(q) * n + p,
                         ilo, jlo, ihi - ilo, jhi - jlo));
    }
  }
  return cover;
}

void build_pou(Cover& cover) {
  const FeSpace& space = *cover.space;
  const std::size_t n_nodes = space.num_nodes();

  // Distance from each covered node to the interface part of its
  // subdomain boundary (1 when there is none).
  std::vector<rvec> dist(cover.size());
  rvec denom(n_nodes, 0.0);
  std::vector<char> covered(n_nodes, 0);
  for (std::size_t l = 0; l < cover.size(); ++l) {
    const Subdomain& sd = cover.subdomains[l];
    const bool has_interface = !sd.interface_edges.empty();
    bool on[4] = {false, false, false, false};
    for (const BoundaryEdge& e : sd.interface_edges) {
      on[static_cast<int>(e.side)] = true;
    }
    dist[l].resize(sd.node_ids.size());
    for (std::size_t m = 0; m < sd.node_ids.size(); ++m) {
      const std::size_t j = sd.node_ids[m];
      covered[j] = 1;
      double d = 1.0;
      if (has_interface) {
        const Point x = space.node_coord(j);
        d = std::numeric_limits<double>::infinity();
        if (on[static_cast<int>(Side::left)]) d = std::min(d, x.x - sd.x0());
        if (on[static_cast<int>(Side::right)]) d = std::min(d, sd.x1() - x.x);
        if (on[static_cast<int>(Side::bottom)]) d = std::min(d, x.y - sd.y0());
        if (on[static_cast<int>(Side::top)]) d = std::min(d, sd.y1() - x.y);
        d = std::max(d, 0.0);
      }
      dist[l][m] = d;
      denom[j] += d;
    }
  }

  for (std::size_t j = 0; j < n_nodes; ++j) {
    if (!covered[j]) {
      throw std::runtime_error("build_pou: node not covered by any subdomain");
    }
    if (denom[j] <= 0.0) {
      throw std::runtime_error(
          "build_pou: zero weight denominator (no overlap at a node)");
    }
  }

  cover.pou.assign(cover.size(), rvec());
  for (std::size_t l = 0; l < cover.size(); ++l) {
    const Subdomain& sd = cover.subdomains[l];
    cover.pou[l].resize(sd.node_ids.size());
    for (std::size_t m = 0; m < sd.node_ids.size(); ++m) {
      cover.pou[l][m] = dist[l][m] / denom[sd.node_ids[m]];
    }
  }
}

cvec restrict(const Cover& cover, std::size_t ell, const cvec& v) {
  const Subdomain& sd = cover.subdomains[ell];
  cvec out(sd.node_ids.size());
  for (std::size_t m = 0; m < sd.node_ids.size(); ++m) {
    out[m] = v[sd.node_ids[m]];
  }
  return out;
}

cvec prolong_nodewise(const Cover& cover, std::size_t ell, const cvec& v_local) {
  const Subdomain& sd = cover.subdomains[ell];
  if (v_local.size() != sd.node_ids.size()) {
    throw std::invalid_argument("prolong_nodewise: local size mismatch");
  }
  cvec out(cover.space->num_nodes(), cplx(0.0, 0.0));
  for (std::size_t m = 0; m < sd.node_ids.size(); ++m) {
    out[sd.node_ids[m]] = v_local[m];
  }
  return out;
}

cvec prolong_weighted(const Cover& cover, std::size_t ell, const cvec& v_local) {
  if (cover.pou.size() != cover.subdomains.size()) {
    throw std::logic_error("prolong_weighted: partition of unity not built");
  }
  const Subdomain& sd = cover.subdomains[ell];
  if (v_local.size() != sd.node_ids.size()) {
    throw std::invalid_argument("prolong_weighted: local size mismatch");
  }
  const rvec& chi = cover.pou[ell];
  cvec out(cover.space->num_nodes(), cplx(0.0, 0.0));
  for (std::size_t m = 0; m < sd.node_ids.size(); ++m) {
    out[sd.node_ids[m]] = chi[m] * v_local[m];
  }
  return out;
}

}  // namespace oras
