#include "oras/assembly.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace oras {

namespace {

// Six-point triangle rule, exact for polynomials of degree 4 on the
// reference triangle {xi,eta >= 0, xi+eta <= 1}. Weights sum to 1/2.
struct TriQuadPoint {
  double xi, eta, w;
};

constexpr TriQuadPoint kTriQuad[6] = {
    {0.09157621350977074, 0.09157621350977074, 0.054975871827660935},
    {0.81684757298045851, 0.09157621350977074, 0.054975871827660935},
    {0.09157621350977074, 0.81684757298045851, 0.054975871827660935},
    {0.44594849091596488, 0.44594849091596488, 0.11169079483900573},
    {0.10810301816807022, 0.44594849091596488, 0.11169079483900573},
    {0.44594849091596488, 0.10810301816807022, 0.11169079483900573},
};

// Three-point Gauss rule on [0,1], exact for degree 5.
const double kEdgeQuadX[3] = {0.5 - std::sqrt(0.15), 0.5, 0.5 + std::sqrt(0.15)};
const double kEdgeQuadW[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// Lagrange shapes on the reference triangle in local dof order
// (v0, v1, v2[, m01, m12, m20]).
void eval_shapes(int degree, double xi, double eta, double* N, double* dxi,
                 double* deta) {
  const double l0 = 1.0 - xi - eta;
  if (degree == 1) {
    N[0] = l0;
    N[1] = xi;
    N[2] = eta;
    dxi[0] = -1.0; deta[0] = -1.0;
    dxi[1] = 1.0;  deta[1] = 0.0;
    dxi[2] = 0.0;  deta[2] = 1.0;
    return;
  }
  N[0] = l0 * (2.0 * l0 - 1.0);
  N[1] = xi * (2.0 * xi - 1.0);
  N[2] = eta * (2.0 * eta - 1.0);
  N[3] = 4.0 * l0 * xi;
  N[4] = 4.0 * xi * eta;
  N[5] = 4.0 * eta * l0;
  dxi[0] = 1.0 - 4.0 * l0;        deta[0] = 1.0 - 4.0 * l0;
  dxi[1] = 4.0 * xi - 1.0;        deta[1] = 0.0;
  dxi[2] = 0.0;                   deta[2] = 4.0 * eta - 1.0;
  dxi[3] = 4.0 * (l0 - xi);       deta[3] = -4.0 * xi;
  dxi[4] = 4.0 * eta;             deta[4] = 4.0 * xi;
  dxi[5] = -4.0 * eta;            deta[5] = 4.0 * (l0 - eta);
}

// Shapes along a boundary edge in local order (end0, end1[, mid]) as a
// function of the arclength parameter t in [0,1].
void eval_edge_shapes(int degree, double t, double* N) {
  if (degree == 1) {
    N[0] = 1.0 - t;
    N[1] = t;
    return;
  }
  N[0] = (1.0 - t) * (1.0 - 2.0 * t);
  N[1] = t * (2.0 * t - 1.0);
  N[2] = 4.0 * t * (1.0 - t);
}

struct TriGeometry {
  Point a;
  double bx, by, cx, cy;  // edge vectors v1-v0, v2-v0
  double det;
};

TriGeometry triangle_geometry(const RectMesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangle(t);
  const Point a = mesh.vertex(tri[0]);
  const Point b = mesh.vertex(tri[1]);
  const Point c = mesh.vertex(tri[2]);
  TriGeometry g;
  g.a = a;
  g.bx = b.x - a.x;
  g.by = b.y - a.y;
  g.cx = c.x - a.x;
  g.cy = c.y - a.y;
  g.det = g.bx * g.cy - g.by * g.cx;
  return g;
}

void check_impedance_edges(const RectMesh& mesh,
                           std::span<const BoundaryEdge> edges) {
  std::map<std::pair<std::size_t, std::size_t>, Side> boundary;
  for (const auto& e : mesh.boundary_edges()) {
    boundary.emplace(std::minmax(e.v0, e.v1), e.side);
  }
  for (const auto& e : edges) {
    auto it = boundary.find(std::minmax(e.v0, e.v1));
    if (it == boundary.end() || it->second != e.side) {
      throw std::invalid_argument(
          "impedance edge is not a boundary edge of the mesh");
    }
  }
}

}  // namespace

ComplexSparseMatrix assemble_helmholtz(const FeSpace& space, double k,
                                       std::span<const BoundaryEdge> impedance_edges) {
  const RectMesh& mesh = space.mesh();
  check_impedance_edges(mesh, impedance_edges);
  const int deg = space.degree();
  const std::size_t nd = space.dofs_per_element();
  std::vector<std::tuple<std::size_t, std::size_t, cplx>> trips;
  trips.reserve(mesh.num_triangles() * nd * nd + impedance_edges.size() * 9);

  double N[6], dxi[6], deta[6], gx[6], gy[6];
  double local[36];
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const TriGeometry g = triangle_geometry(mesh, t);
    for (std::size_t e = 0; e < nd * nd; ++e) local[e] = 0.0;
    for (const auto& q : kTriQuad) {
      eval_shapes(deg, q.xi, q.eta, N, dxi, deta);
      for (std::size_t i = 0; i < nd; ++i) {
        gx[i] = (g.cy * dxi[i] - g.by * deta[i]) / g.det;
        gy[i] = (-g.cx * dxi[i] + g.bx * deta[i]) / g.det;
      }
      const double wdet = q.w * g.det;
      for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nd; ++j) {
          // grouped so the (i,j) and (j,i) sums round identically
          local[i * nd + j] +=
              wdet * (gx[i] * gx[j] + gy[i] * gy[j] - k * k * (N[i] * N[j]));
        }
      }
    }
    const auto dofs = space.element_dofs(t);
    for (std::size_t i = 0; i < nd; ++i) {
      for (std::size_t j = 0; j < nd; ++j) {
        trips.emplace_back(dofs[i], dofs[j], cplx(local[i * nd + j], 0.0));
      }
    }
  }

  const std::size_t ne = deg == 1 ? 2 : 3;
  double edgeN[3];
  double elocal[9];
  for (const auto& e : impedance_edges) {
    const Point p0 = mesh.vertex(e.v0);
    const Point p1 = mesh.vertex(e.v1);
    const double len = std::hypot(p1.x - p0.x, p1.y - p0.y);
    for (std::size_t a = 0; a < ne * ne; ++a) elocal[a] = 0.0;
    for (int q = 0; q < 3; ++q) {
      eval_edge_shapes(deg, kEdgeQuadX[q], edgeN);
      const double wlen = kEdgeQuadW[q] * len;
      for (std::size_t i = 0; i < ne; ++i) {
        for (std::size_t j = 0; j < ne; ++j) {
          elocal[i * ne + j] += wlen * (edgeN[i] * edgeN[j]);
        }
      }
    }
    const auto dofs = space.edge_dofs(e);
    for (std::size_t i = 0; i < ne; ++i) {
      for (std::size_t j = 0; j < ne; ++j) {
        trips.emplace_back(dofs[i], dofs[j],
                           cplx(0.0, -k * elocal[i * ne + j]));
      }
    }
  }

  return ComplexSparseMatrix::from_triplets(space.num_nodes(), space.num_nodes(),
                                            trips, /*symmetric=*/true);
}

cvec assemble_load(const FeSpace& space, const ProblemData& data,
                   std::span<const BoundaryEdge> impedance_edges) {
  const RectMesh& mesh = space.mesh();
  check_impedance_edges(mesh, impedance_edges);
  const int deg = space.degree();
  const std::size_t nd = space.dofs_per_element();
  cvec rhs(space.num_nodes(), cplx(0.0, 0.0));

  if (data.f) {
    double N[6], dxi[6], deta[6];
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
      const TriGeometry g = triangle_geometry(mesh, t);
      const auto dofs = space.element_dofs(t);
      for (const auto& q : kTriQuad) {
        eval_shapes(deg, q.xi, q.eta, N, dxi, deta);
        const double x = g.a.x + g.bx * q.xi + g.cx * q.eta;
        const double y = g.a.y + g.by * q.xi + g.cy * q.eta;
        const cplx fval = data.f(x, y) * (q.w * g.det);
        for (std::size_t i = 0; i < nd; ++i) {
          rhs[dofs[i]] += fval * N[i];
        }
      }
    }
  }

  if (data.g) {
    const std::size_t ne = deg == 1 ? 2 : 3;
    double edgeN[3];
    for (const auto& e : impedance_edges) {
      const Point p0 = mesh.vertex(e.v0);
      const Point p1 = mesh.vertex(e.v1);
      const double len = std::hypot(p1.x - p0.x, p1.y - p0.y);
      const auto dofs = space.edge_dofs(e);
      for (int q = 0; q < 3; ++q) {
        const double t = kEdgeQuadX[q];
        eval_edge_shapes(deg, t, edgeN);
        const double x = p0.x + t * (p1.x - p0.x);
        const double y = p0.y + t * (p1.y - p0.y);
        const cplx gval = data.g(x, y, e.side) * (kEdgeQuadW[q] * len);
        for (std::size_t i = 0; i < ne; ++i) {
          rhs[dofs[i]] += gval * edgeN[i];
        }
      }
    }
  }

  return rhs;
}

ComplexSparseMatrix assemble_metric_dk(const FeSpace& space, double k) {
  const RectMesh& mesh = space.mesh();
  const int deg = space.degree();
  const std::size_t nd = space.dofs_per_element();
  std::vector<std::tuple<std::size_t, std::size_t, cplx>> trips;
  trips.reserve(mesh.num_triangles() * nd * nd);

  double N[6], dxi[6], deta[6], gx[6], gy[6];
  double local[36];
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const TriGeometry g = triangle_geometry(mesh, t);
    for (std::size_t e = 0; e < nd * nd; ++e) local[e] = 0.0;
    for (const auto& q : kTriQuad) {
      eval_shapes(deg, q.xi, q.eta, N, dxi, deta);
      for (std::size_t i = 0; i < nd; ++i) {
        gx[i] = (g.cy * dxi[i] - g.by * deta[i]) / g.det;
        gy[i] = (-g.cx * dxi[i] + g.bx * deta[i]) / g.det;
      }
      const double wdet = q.w * g.det;
      for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nd; ++j) {
          local[i * nd + j] +=
              wdet * (gx[i] * gx[j] + gy[i] * gy[j] + k * k * (N[i] * N[j]));
        }
      }
    }
    const auto dofs = space.element_dofs(t);
    for (std::size_t i = 0; i < nd; ++i) {
      for (std::size_t j = 0; j < nd; ++j) {
        trips.emplace_back(dofs[i], dofs[j], cplx(local[i * nd + j], 0.0));
      }
    }
  }

  return ComplexSparseMatrix::from_triplets(space.num_nodes(), space.num_nodes(),
                                            trips, /*symmetric=*/true);
}

namespace {

double l2_accumulate(const FeSpace& space, const cvec* coeffs,
                     const std::function<cplx(double, double)>& fn) {
  const RectMesh& mesh = space.mesh();
  const int deg = space.degree();
  const std::size_t nd = space.dofs_per_element();
  double N[6], dxi[6], deta[6];
  double acc = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const TriGeometry g = triangle_geometry(mesh, t);
    const auto dofs = space.element_dofs(t);
    for (const auto& q : kTriQuad) {
      eval_shapes(deg, q.xi, q.eta, N, dxi, deta);
      const double x = g.a.x + g.bx * q.xi + g.cx * q.eta;
      const double y = g.a.y + g.by * q.xi + g.cy * q.eta;
      cplx val(0.0, 0.0);
      if (coeffs) {
        for (std::size_t i = 0; i < nd; ++i) val += (*coeffs)[dofs[i]] * N[i];
      }
      if (fn) val -= fn(x, y);
      acc += q.w * g.det * std::norm(val);
    }
  }
  return std::sqrt(acc);
}

}  // namespace

double l2_error(const FeSpace& space, const cvec& coeffs,
                const std::function<cplx(double, double)>& exact) {
  if (coeffs.size() != space.num_nodes()) {
    throw std::invalid_argument("l2_error: coefficient size mismatch");
  }
  return l2_accumulate(space, &coeffs, exact);
}

double l2_norm(const FeSpace& space,
               const std::function<cplx(double, double)>& fn) {
  return l2_accumulate(space, nullptr, fn);
}

}  // namespace oras
