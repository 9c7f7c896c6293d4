#include "oras/fe_space.hpp"

#include <stdexcept>
#include <utility>

namespace oras {

namespace {

// Refined-grid integer coordinates of a mesh vertex.
std::pair<int, int> refined_coords(const RectMesh& mesh, int degree,
                                   std::size_t vertex) {
  const int i = static_cast<int>(vertex % (mesh.nx() + 1));
  const int j = static_cast<int>(vertex / (mesh.nx() + 1));
  return {degree * i, degree * j};
}

}  // namespace

FeSpace::FeSpace(std::shared_ptr<const RectMesh> mesh, int degree)
    : mesh_(std::move(mesh)), degree_(degree) {
  if (degree_ != 1 && degree_ != 2) {
    throw std::invalid_argument("FeSpace: degree must be 1 or 2");
  }
  const std::size_t d = dofs_per_element();
  element_dofs_.resize(mesh_->num_triangles() * d);
  for (std::size_t t = 0; t < mesh_->num_triangles(); ++t) {
    const auto& tri = mesh_->triangle(t);
    int ri[3], rj[3];
    for (int v = 0; v < 3; ++v) {
      auto [a, b] = refined_coords(*mesh_, degree_, tri[v]);
      ri[v] = a;
      rj[v] = b;
    }
    std::size_t* dofs = element_dofs_.data() + t * d;
    for (int v = 0; v < 3; ++v) {
      dofs[v] = node_index(ri[v], rj[v]);
    }
    if (degree_ == 2) {
      // Midpoints m01, m12, m20; vertex refined coords are even so the
      // averages are exact integers.
      constexpr int ea[3] = {0, 1, 2};
      constexpr int eb[3] = {1, 2, 0};
      for (int e = 0; e < 3; ++e) {
        const int mi = (ri[ea[e]] + ri[eb[e]]) / 2;
        const int mj = (rj[ea[e]] + rj[eb[e]]) / 2;
        dofs[3 + e] = node_index(mi, mj);
      }
    }
  }
}

Point FeSpace::node_coord(std::size_t node) const {
  const int rnx = degree_ * mesh_->nx() + 1;
  const int ii = static_cast<int>(node % rnx);
  const int jj = static_cast<int>(node / rnx);
  return {mesh_->origin().x + ii * (mesh_->hx() / degree_),
          mesh_->origin().y + jj * (mesh_->hy() / degree_)};
}

std::vector<std::size_t> FeSpace::edge_dofs(const BoundaryEdge& e) const {
  auto [i0, j0] = refined_coords(*mesh_, degree_, e.v0);
  auto [i1, j1] = refined_coords(*mesh_, degree_, e.v1);
  std::vector<std::size_t> dofs{node_index(i0, j0), node_index(i1, j1)};
  if (degree_ == 2) {
    dofs.push_back(node_index((i0 + i1) / 2, (j0 + j1) / 2));
  }
  return dofs;
}

std::vector<std::size_t> FeSpace::boundary_nodes() const {
  const int rnx = degree_ * mesh_->nx();
  const int rny = degree_ * mesh_->ny();
  std::vector<std::size_t> nodes;
  nodes.reserve(2 * static_cast<std::size_t>(rnx + rny));
  for (int ii = 0; ii <= rnx; ++ii) nodes.push_back(node_index(ii, 0));
  for (int jj = 1; jj < rny; ++jj) {
    nodes.push_back(node_index(0, jj));
    nodes.push_back(node_index(rnx, jj));
  }
  for (int ii = 0; ii <= rnx; ++ii) nodes.push_back(node_index(ii, rny));
  return nodes;
}

}  // namespace oras
