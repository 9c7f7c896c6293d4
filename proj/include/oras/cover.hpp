#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <vector>

#include "oras/fe_space.hpp"
#include "oras/mesh.hpp"
#include "oras/types.hpp"

namespace oras {

/// One overlapping rectangular subdomain, aligned to mesh cells.
struct Subdomain {
  std::size_t id = 0;
  // Cell-index box within the global mesh.
  int cell_i0 = 0, cell_j0 = 0, cells_x = 0, cells_y = 0;
  std::vector<std::size_t> element_ids;  // global triangle indices
  std::vector<std::size_t> node_ids;     // global node indices, ascending
  std::shared_ptr<const FeSpace> local_space;
  // Boundary edges of the submesh, split into the part shared with the
  // global domain boundary and the artificial interface inside the domain.
  std::vector<BoundaryEdge> interface_edges;
  std::vector<BoundaryEdge> physical_edges;

  double x0() const { return local_space->mesh().origin().x; }
  double y0() const { return local_space->mesh().origin().y; }
  double x1() const { return x0() + local_space->mesh().width(); }
  double y1() const { return y0() + local_space->mesh().height(); }
};

/// Overlapping cover of the global mesh plus partition-of-unity weights.
/// `pou[l][m]` is the weight at local node m of subdomain l; weights are
/// empty until build_pou runs.
struct Cover {
  std::shared_ptr<const FeSpace> space;
  std::vector<Subdomain> subdomains;
  std::vector<rvec> pou;

  std::size_t size() const { return subdomains.size(); }
  void dump_summary(std::ostream& os) const;
};

/// N strips of nonoverlapping width 2/3 along x, each extended by `overlap`
/// (default 1/6) on interior sides and clipped to the domain. Strip width
/// and overlap must be whole numbers of cells.
Cover strip_cover(std::shared_ptr<const FeSpace> space, int n_strips,
                  double overlap = 1.0 / 6.0);

/// n x n square cells on the unit square, each extended by a fraction
/// `overlap_fraction` (default 1/4) of the cell width on interior sides and
/// clipped to the domain. Cell width and extension must be whole numbers of
/// mesh cells.
Cover checkerboard_cover(std::shared_ptr<const FeSpace> space, int n,
                         double overlap_fraction = 0.25);

/// Fill cover.pou with the distance-quotient weights
///   chi_l(x) = d_l(x) / sum_m d_m(x),
/// where d_l is the distance to the interface part of the subdomain
/// boundary (1 when the subdomain has no interface). The weights vanish on
/// interfaces and sum to 1 at every global node.
void build_pou(Cover& cover);

/// Entries of a global vector at the subdomain's nodes, in local order.
cvec restrict(const Cover& cover, std::size_t ell, const cvec& v);

/// Zero-extension of a local vector to the global space.
cvec prolong_nodewise(const Cover& cover, std::size_t ell, const cvec& v_local);

/// Zero-extension of chi_l .* v_local; requires build_pou to have run.
cvec prolong_weighted(const Cover& cover, std::size_t ell, const cvec& v_local);

}  // namespace oras
