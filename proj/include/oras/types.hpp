#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace oras {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Sides of an axis-aligned rectangle; also tags the outward normal.
enum class Side { left, right, bottom, top };

inline Vec2 outward_normal(Side s) {
  switch (s) {
    case Side::left: return {-1.0, 0.0};
    case Side::right: return {1.0, 0.0};
    case Side::bottom: return {0.0, -1.0};
    case Side::top: return {0.0, 1.0};
  }
  return {0.0, 0.0};
}

inline const char* side_name(Side s) {
  switch (s) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::bottom: return "bottom";
    case Side::top: return "top";
  }
  return "?";
}

// Execution policy for kernels that have both a serial reference path and an
// OpenMP path. The two paths produce bitwise-identical results; the serial
// one is kept for testing and benchmarking.
enum class Exec { serial, openmp };

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSpdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlignmentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace oras
