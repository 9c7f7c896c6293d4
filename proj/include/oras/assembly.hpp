#pragma once

#include <functional>
#include <span>

#include "oras/complex_csr.hpp"
#include "oras/fe_space.hpp"
#include "oras/problem_data.hpp"
#include "oras/types.hpp"

namespace oras {

/// Helmholtz impedance stiffness matrix
///   A_pq = int grad(phi_q).grad(phi_p) - k^2 phi_q phi_p
///          - ik int_{impedance edges} phi_q phi_p.
/// The edge list must consist of boundary edges of the mesh; the impedance
/// term is applied on exactly those edges. Complex symmetric (A^T = A).
ComplexSparseMatrix assemble_helmholtz(const FeSpace& space, double k,
                                       std::span<const BoundaryEdge> impedance_edges);

/// Load vector F_p = int f phi_p + int_{impedance edges} g phi_p.
cvec assemble_load(const FeSpace& space, const ProblemData& data,
                   std::span<const BoundaryEdge> impedance_edges);

/// Weighted H1 Gram matrix (D_k)_pq = int grad(phi_q).grad(phi_p)
/// + k^2 phi_q phi_p. Real symmetric positive definite; the imaginary
/// parts of the stored values are exactly zero.
ComplexSparseMatrix assemble_metric_dk(const FeSpace& space, double k);

/// L2 norm over the mesh of (u_h - exact) where u_h has nodal coefficients
/// `coeffs`, evaluated with the assembly quadrature.
double l2_error(const FeSpace& space, const cvec& coeffs,
                const std::function<cplx(double, double)>& exact);

/// L2 norm of a function over the mesh, same quadrature as l2_error.
double l2_norm(const FeSpace& space,
               const std::function<cplx(double, double)>& fn);

}  // namespace oras
