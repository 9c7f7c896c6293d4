#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "oras/mesh.hpp"
#include "oras/types.hpp"

using namespace oras;

TEST_SUITE("mesh") {

TEST_CASE("build lays out vertices lexicographically, x fastest") {
  const auto m = RectMesh::build({0.5, -1.0}, 3.0, 2.0, 3, 2);

  CHECK(m.nx() == 3);
  CHECK(m.ny() == 2);
  CHECK(m.hx() == doctest::Approx(1.0));
  CHECK(m.hy() == doctest::Approx(1.0));
  CHECK(m.width() == doctest::Approx(3.0));
  CHECK(m.height() == doctest::Approx(2.0));
  CHECK(m.mesh_size() == doctest::Approx(1.0));
  REQUIRE(m.num_vertices() == 12);
  REQUIRE(m.num_triangles() == 12);

  for (int j = 0; j <= 2; ++j)
    for (int i = 0; i <= 3; ++i) {
      const Point& p = m.vertex(m.vertex_index(i, j));
      CHECK(p.x == doctest::Approx(0.5 + i).epsilon(1e-15));
      CHECK(p.y == doctest::Approx(-1.0 + j).epsilon(1e-15));
    }
  CHECK(m.vertex_index(0, 0) == 0);
  CHECK(m.vertex_index(3, 0) == 3);
  CHECK(m.vertex_index(0, 1) == 4);
}

TEST_CASE("cells split along the lower-left diagonal into ccw triangles") {
  const auto m = RectMesh::build({0.0, 0.0}, 1.0, 1.0, 2, 2);

  // cell (ci, cj) owns triangles 2*(cj*nx + ci) and the one after
  for (int cj = 0; cj < 2; ++cj)
    for (int ci = 0; ci < 2; ++ci) {
      const std::size_t t0 = 2 * (std::size_t(cj) * 2 + std::size_t(ci));
      const std::size_t v00 = m.vertex_index(ci, cj);
      const std::size_t v10 = m.vertex_index(ci + 1, cj);
      const std::size_t v01 = m.vertex_index(ci, cj + 1);
      const std::size_t v11 = m.vertex_index(ci + 1, cj + 1);
      CHECK(m.triangle(t0) == std::array<std::size_t, 3>{v00, v10, v11});
      CHECK(m.triangle(t0 + 1) == std::array<std::size_t, 3>{v00, v11, v01});
    }

  double total_area = 0.0;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangle(t);
    const Point a = m.vertex(tri[0]);
    const Point b = m.vertex(tri[1]);
    const Point c = m.vertex(tri[2]);
    const double twice =
        (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    CHECK(twice > 0.0);  // counterclockwise
    CHECK(twice == doctest::Approx(2.0 * 0.125).epsilon(1e-14));
    total_area += 0.5 * twice;
  }
  CHECK(total_area == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("boundary edges walk bottom, right, top, left") {
  const auto m = RectMesh::build({0.0, 0.0}, 2.0, 1.0, 2, 3);
  const auto edges = m.boundary_edges();
  REQUIRE(edges.size() == 2 * (2 + 3));

  std::size_t e = 0;
  for (int i = 0; i < 2; ++i, ++e) {
    CHECK(edges[e].side == Side::bottom);
    CHECK(edges[e].v0 == m.vertex_index(i, 0));
    CHECK(edges[e].v1 == m.vertex_index(i + 1, 0));
  }
  for (int j = 0; j < 3; ++j, ++e) {
    CHECK(edges[e].side == Side::right);
    CHECK(edges[e].v0 == m.vertex_index(2, j));
    CHECK(edges[e].v1 == m.vertex_index(2, j + 1));
  }
  for (int i = 0; i < 2; ++i, ++e) {
    CHECK(edges[e].side == Side::top);
    CHECK(edges[e].v0 == m.vertex_index(i, 3));
    CHECK(edges[e].v1 == m.vertex_index(i + 1, 3));
  }
  for (int j = 0; j < 3; ++j, ++e) {
    CHECK(edges[e].side == Side::left);
    CHECK(edges[e].v0 == m.vertex_index(0, j));
    CHECK(edges[e].v1 == m.vertex_index(0, j + 1));
  }

  // side tags match coordinates and outward normals
  for (const BoundaryEdge& be : edges) {
    const Point p0 = m.vertex(be.v0);
    const Point p1 = m.vertex(be.v1);
    const Vec2 nrm = outward_normal(be.side);
    if (nrm.x != 0.0) {
      CHECK(p0.x == p1.x);
      CHECK(p0.x == doctest::Approx(nrm.x > 0 ? 2.0 : 0.0));
    } else {
      CHECK(p0.y == p1.y);
      CHECK(p0.y == doctest::Approx(nrm.y > 0 ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("build_with_spacing reproduces build exactly") {
  const auto a = RectMesh::build({0.25, 0.5}, 1.5, 0.75, 6, 3);
  const auto b = RectMesh::build_with_spacing({0.25, 0.5}, 6, 3, 1.5 / 6, 0.75 / 3);
  REQUIRE(a.num_vertices() == b.num_vertices());
  for (std::size_t v = 0; v < a.num_vertices(); ++v) {
    CHECK(a.vertex(v).x == b.vertex(v).x);
    CHECK(a.vertex(v).y == b.vertex(v).y);
  }
  REQUIRE(a.num_triangles() == b.num_triangles());
  for (std::size_t t = 0; t < a.num_triangles(); ++t) CHECK(a.triangle(t) == b.triangle(t));
}

TEST_CASE("dump emits one line per vertex, triangle and boundary edge") {
  const auto m = RectMesh::build({0.0, 0.0}, 1.0, 1.0, 1, 1);
  std::ostringstream os;
  m.dump(os);

  std::istringstream is(os.str());
  std::string line;
  std::size_t nv = 0, nt = 0, nb = 0;
  while (std::getline(is, line)) {
    REQUIRE(!line.empty());
    if (line[0] == 'v') ++nv;
    if (line[0] == 't') ++nt;
    if (line[0] == 'b') ++nb;
  }
  CHECK(nv == 4);
  CHECK(nt == 2);
  CHECK(nb == 4);
  CHECK(os.str().find("b 0 1 bottom") != std::string::npos);
  CHECK(os.str().find("b 0 2 left") != std::string::npos);
}

TEST_CASE("mesh construction rejects bad arguments") {
  CHECK_THROWS_AS(RectMesh::build({0, 0}, 0.0, 1.0, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(RectMesh::build({0, 0}, 1.0, -1.0, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(RectMesh::build({0, 0}, 1.0, 1.0, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(RectMesh::build_with_spacing({0, 0}, 2, 2, 0.0, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(RectMesh::build_with_spacing({0, 0}, 2, 0, 0.1, 0.1),
                  std::invalid_argument);
}

TEST_CASE("cells per unit follow the k^(5/4) rule") {
  // independent recomputation: n = ceil(k^(5/4) / c)
  auto expect = [](double k, double c) {
    return static_cast<int>(std::ceil(std::pow(k, 1.25) / c));
  };
  CHECK(mesh_size_for_wavenumber(20.0, 2) == expect(20.0, 1.3));
  CHECK(mesh_size_for_wavenumber(20.0, 2) == 33);
  CHECK(mesh_size_for_wavenumber(10.0, 2) == 14);
  CHECK(mesh_size_for_wavenumber(40.0, 2) == 78);
  CHECK(mesh_size_for_wavenumber(5.0, 2) == 6);
  CHECK(mesh_size_for_wavenumber(20.0, 2, 0.65) == 66);

  // resolution rule is degree-independent
  CHECK(mesh_size_for_wavenumber(20.0, 1) == mesh_size_for_wavenumber(20.0, 2));

  CHECK_THROWS_AS(mesh_size_for_wavenumber(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(mesh_size_for_wavenumber(-3.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(mesh_size_for_wavenumber(10.0, 2, 0.0), std::invalid_argument);
}

TEST_CASE("align_cells_per_unit snaps to the next compatible resolution") {
  {
    const double lens[] = {2.0 / 3.0, 1.0 / 6.0};
    CHECK(align_cells_per_unit(33, lens) == 36);
    CHECK(align_cells_per_unit(36, lens) == 36);
    CHECK(align_cells_per_unit(37, lens) == 42);
  }
  {
    const double lens[] = {0.5, 0.125};
    CHECK(align_cells_per_unit(33, lens) == 40);
  }
  {
    const double lens[] = {1.0, 0.25};
    CHECK(align_cells_per_unit(6, lens) == 8);
  }
  {
    // every length must map to at least one whole cell
    const double lens[] = {1e-4};
    CHECK(align_cells_per_unit(1, lens) == 10000);
  }
  {
    const double lens[] = {1.0};
    CHECK(align_cells_per_unit(-5, lens) == 1);  // n_min clamped to 1
  }
  {
    const double lens[] = {0.707106781186547};
    CHECK_THROWS_AS(align_cells_per_unit(1, lens), AlignmentError);
  }
}

}  // TEST_SUITE
