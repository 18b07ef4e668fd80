#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "sectorial/generators.hpp"
#include "sectorial/linalg.hpp"

namespace testutil {

using sectorial::Complex;
using sectorial::ComplexMatrix;
using sectorial::Rng;

constexpr double kPi = std::numbers::pi;

inline ComplexMatrix random_matrix(int n, Rng& rng, double scale = 1.0) {
  ComplexMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = scale * rng.complex_normal();
  return a;
}

inline ComplexMatrix random_hermitian(int n, Rng& rng) {
  const ComplexMatrix g = random_matrix(n, rng);
  return (g + g.adjoint()) * 0.5;
}

inline ComplexMatrix diag(std::initializer_list<Complex> d) {
  ComplexMatrix a = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                                        static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (Complex z : d) {
    a(i, i) = z;
    ++i;
  }
  return a;
}

inline ComplexMatrix remark_matrix() { return diag({{3.0, 2.0}, {1.0, 0.0}}); }

inline ComplexMatrix nilpotent() {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  return a;
}

// Normal matrix U diag(d) U^* with the given spectrum.
inline ComplexMatrix normal_with_spectrum(const sectorial::ComplexVector& d, Rng& rng) {
  const ComplexMatrix u = sectorial::random_unitary(static_cast<int>(d.size()), rng);
  return u * d.asDiagonal() * u.adjoint();
}

inline double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

inline std::string data_file(const std::string& name) {
  return std::string(SECTORIAL_TEST_DATA) + "/" + name;
}

}  // namespace testutil
