#include "oras/mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace oras {

RectMesh RectMesh::build(Point origin, double width, double height, int nx, int ny) {
  if (!(width > 0.0) || !(height > 0.0))
    throw std::invalid_argument("RectMesh: width and height must be positive");
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("RectMesh: nx and ny must be at least 1");
  return build_with_spacing(origin, nx, ny, width / nx, height / ny);
}

RectMesh RectMesh::build_with_spacing(Point origin, int nx, int ny, double hx,
                                      double hy) {
  if (nx < 1 || ny < 1 || !(hx > 0.0) || !(hy > 0.0))
    throw std::invalid_argument("RectMesh: invalid cell counts or spacing");

  RectMesh m;
  m.origin_ = origin;
  m.nx_ = nx;
  m.ny_ = ny;
  m.hx_ = hx;
  m.hy_ = hy;

  m.vertices_.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      m.vertices_.push_back({origin.x + i * hx, origin.y + j * hy});

  m.triangles_.reserve(2u * nx * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::size_t v00 = m.vertex_index(i, j);
      const std::size_t v10 = m.vertex_index(i + 1, j);
      const std::size_t v01 = m.vertex_index(i, j + 1);
      const std::size_t v11 = m.vertex_index(i + 1, j + 1);
      // diagonal v00 -> v11, both triangles counterclockwise
      m.triangles_.push_back({v00, v10, v11});
      m.triangles_.push_back({v00, v11, v01});
    }

  m.boundary_edges_.reserve(2u * (nx + ny));
  for (int i = 0; i < nx; ++i)
    m.boundary_edges_.push_back({m.vertex_index(i, 0), m.vertex_index(i + 1, 0),
                                 Side::bottom});
  for (int j = 0; j < ny; ++j)
    m.boundary_edges_.push_back({m.vertex_index(nx, j), m.vertex_index(nx, j + 1),
                                 Side::right});
  for (int i = 0; i < nx; ++i)
    m.boundary_edges_.push_back({m.vertex_index(i, ny), m.vertex_index(i + 1, ny),
                                 Side::top});
  for (int j = 0; j < ny; ++j)
    m.boundary_edges_.push_back({m.vertex_index(0, j), m.vertex_index(0, j + 1),
                                 Side::left});
  return m;
}

void RectMesh::dump(std::ostream& os) const {
  os.precision(17);
  for (const Point& p : vertices_) os << "v " << p.x << ' ' << p.y << '\n';
  for (const auto& t : triangles_) os << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const BoundaryEdge& e : boundary_edges_)
    os << "b " << e.v0 << ' ' << e.v1 << ' ' << side_name(e.side) << '\n';
}

int mesh_size_for_wavenumber(double k, int degree, double c_mesh) {
  (void)degree;
  if (!(k > 0.0)) throw std::invalid_argument("mesh_size_for_wavenumber: k must be positive");
  if (!(c_mesh > 0.0))
    throw std::invalid_argument("mesh_size_for_wavenumber: c_mesh must be positive");
  const double h = c_mesh * std::pow(k, -1.25);
  return static_cast<int>(std::ceil(1.0 / h));
}

int align_cells_per_unit(int n_min, std::span<const double> aligned_lengths) {
  if (n_min < 1) n_min = 1;
  constexpr int kSearchCap = 100000;
  for (int n = n_min; n <= n_min + kSearchCap; ++n) {
    bool ok = true;
    for (double len : aligned_lengths) {
      const double cells = len * n;
      if (std::abs(cells - std::round(cells)) > 1e-6 || std::round(cells) < 1.0) {
        ok = false;
        break;
      }
    }
    if (ok) return n;
  }
  throw AlignmentError("align_cells_per_unit: no aligned resolution found");
}

}  // namespace oras
