#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "oras/mesh.hpp"
#include "oras/types.hpp"

namespace oras {

/// Continuous Lagrange nodal space of degree 1 or 2 on a RectMesh. Nodes
/// live on the degree-refined grid ((degree*nx+1) x (degree*ny+1)) and are
/// indexed lexicographically with x fastest, matching the mesh vertices for
/// degree 1 and adding edge midpoints for degree 2.
class FeSpace {
 public:
  FeSpace(std::shared_ptr<const RectMesh> mesh, int degree);

  const RectMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const RectMesh>& mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }

  std::size_t num_nodes() const {
    return static_cast<std::size_t>(degree_ * mesh_->nx() + 1) *
           (degree_ * mesh_->ny() + 1);
  }
  std::size_t node_index(int ii, int jj) const {
    return static_cast<std::size_t>(jj) * (degree_ * mesh_->nx() + 1) +
           static_cast<std::size_t>(ii);
  }
  Point node_coord(std::size_t node) const;

  std::size_t dofs_per_element() const { return degree_ == 1 ? 3 : 6; }

  /// Global node indices of a triangle: vertices (v0,v1,v2) for degree 1,
  /// plus edge midpoints (m01,m12,m20) for degree 2.
  std::span<const std::size_t> element_dofs(std::size_t tri) const {
    const std::size_t d = dofs_per_element();
    return {element_dofs_.data() + tri * d, d};
  }

  /// Nodes on a boundary edge, ordered (end0, end1[, midpoint]).
  std::vector<std::size_t> edge_dofs(const BoundaryEdge& e) const;

  std::vector<std::size_t> boundary_nodes() const;

 private:
  std::shared_ptr<const RectMesh> mesh_;
  int degree_;
  std::vector<std::size_t> element_dofs_;
};

}  // namespace oras
