#pragma once

#include <functional>

#include "oras/types.hpp"

namespace oras {

/// Data of an interior impedance problem
///   -(Laplace + k^2) u = f   in the domain,
///   (d/dn - ik) u = g        on the boundary.
/// A null f or g is treated as identically zero.
struct ProblemData {
  double k = 0.0;
  std::function<cplx(double, double)> f;
  std::function<cplx(double, double, Side)> g;
};

/// Exact plane wave u(x) = exp(i k d.x) for a unit direction d.
std::function<cplx(double, double)> plane_wave(double k, Vec2 direction);

/// Problem data whose exact solution is the plane wave above: f = 0 and
/// g = ik (d.n - 1) exp(i k d.x) on each boundary side with outward normal n.
ProblemData plane_wave_data(double k, Vec2 direction);

}  // namespace oras
