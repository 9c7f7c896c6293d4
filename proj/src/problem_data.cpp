#include "oras/problem_data.hpp"

#include <cmath>
#include <stdexcept>

namespace oras {

namespace {

void check_unit(Vec2 d) {
  const double len = std::hypot(d.x, d.y);
  if (std::abs(len - 1.0) > 1e-12) {
    throw std::invalid_argument("plane wave direction must be a unit vector");
  }
}

}  // namespace

std::function<cplx(double, double)> plane_wave(double k, Vec2 direction) {
  check_unit(direction);
  return [k, direction](double x, double y) {
    return std::exp(cplx(0.0, k * (direction.x * x + direction.y * y)));
  };
}

ProblemData plane_wave_data(double k, Vec2 direction) {
  check_unit(direction);
  ProblemData data;
  data.k = k;
  data.f = nullptr;
  data.g = [k, direction](double x, double y, Side side) {
    const Vec2 n = outward_normal(side);
    const double dn = direction.x * n.x + direction.y * n.y;
    const cplx wave = std::exp(cplx(0.0, k * (direction.x * x + direction.y * y)));
    return cplx(0.0, k) * (dn - 1.0) * wave;
  };
  return data;
}

}  // namespace oras
