#pragma once

// Dense complex linear algebra used by every other module: checked arithmetic,
// Cartesian decomposition, a cyclic complex Jacobi eigensolver for Hermitian
// matrices, the spectral norm, and partial-pivoting LU solves.
//
// Everything is templated on the real scalar so the same code can be run in
// long double to cross-check the double results.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sectorial/errors.hpp"

namespace sectorial {

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = ComplexMatrixT<double>;
using ComplexVector = ComplexVectorT<double>;
using RealVector = RealVectorT<double>;

// ---------------------------------------------------------------------------
// Validation and checked arithmetic

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const auto z = a(i, j);
      if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z))) return false;
    }
  return true;
}

/// Throws InvalidInput unless `a` is a non-empty square matrix with finite entries.
template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what = "matrix") {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw InvalidInput(std::string(what) + " must be square and non-empty, got " +
                       std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  if (!all_finite(a)) throw InvalidInput(std::string(what) + " has non-finite entries");
}

template <typename Real>
void require_same_shape(const ComplexMatrixT<Real>& a, const ComplexMatrixT<Real>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("dimension mismatch: " + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                       std::to_string(b.cols()));
}

template <typename Real>
ComplexMatrixT<Real> add(const ComplexMatrixT<Real>& a, const ComplexMatrixT<Real>& b) {
  require_same_shape(a, b);
  return a + b;
}

template <typename Real>
ComplexMatrixT<Real> subtract(const ComplexMatrixT<Real>& a, const ComplexMatrixT<Real>& b) {
  require_same_shape(a, b);
  return a - b;
}

template <typename Real>
ComplexMatrixT<Real> multiply(const ComplexMatrixT<Real>& a, const ComplexMatrixT<Real>& b) {
  if (a.cols() != b.rows())
    throw InvalidInput("dimension mismatch in product: " + std::to_string(a.cols()) +
                       " columns vs " + std::to_string(b.rows()) + " rows");
  return a * b;
}

template <typename Real>
ComplexMatrixT<Real> scale(const ComplexMatrixT<Real>& a, std::complex<Real> s) {
  return s * a;
}

/// Conjugate transpose A*.
template <typename Real>
ComplexMatrixT<Real> adjoint(const ComplexMatrixT<Real>& a) {
  return a.adjoint();
}

template <typename Real>
ComplexMatrixT<Real> identity(Eigen::Index n) {
  return ComplexMatrixT<Real>::Identity(n, n);
}

// ---------------------------------------------------------------------------
// Cartesian decomposition A = Re(A) + i Im(A)

template <typename Real>
struct CartesianPartsT {
  ComplexMatrixT<Real> re;  // (A + A*) / 2
  ComplexMatrixT<Real> im;  // (A - A*) / (2i)
};
using CartesianParts = CartesianPartsT<double>;

template <typename Real>
CartesianPartsT<Real> cartesian_parts(const ComplexMatrixT<Real>& a) {
  require_square(a);
  const ComplexMatrixT<Real> star = a.adjoint();
  CartesianPartsT<Real> parts;
  parts.re = (a + star) * Real(0.5);
  parts.im = (a - star) * std::complex<Real>(0, Real(-0.5));
  // Hermitian by construction; clean the diagonal of round-off imaginary parts.
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    parts.re(i, i) = std::real(parts.re(i, i));
    parts.im(i, i) = std::real(parts.im(i, i));
  }
  return parts;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

template <typename Real>
struct HermitianEigenT {
  RealVectorT<Real> values;      // ascending
  ComplexMatrixT<Real> vectors;  // unitary, column eigenvectors
  int sweeps = 0;

  Real min() const { return values(0); }
  Real max() const { return values(values.size() - 1); }
};
using HermitianEigen = HermitianEigenT<double>;

struct JacobiOptions {
  double off_tolerance = 1e-13;  // relative to ||H||_F
  int max_sweeps = 30;
  double hermitian_tolerance = 1e-10;
};

namespace detail {

template <typename Real>
Real off_diagonal_norm(const ComplexMatrixT<Real>& m) {
  Real s = 0;
  const Eigen::Index n = m.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// Plain complex product; avoids the NaN/Inf recovery path of operator*.
template <typename Real>
inline std::complex<Real> mul(std::complex<Real> a, std::complex<Real> b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// One complex Jacobi rotation annihilating m(p,q), accumulated into v.
//
// With b = m(p,q) = |b| e^{i phi}, the rotation is V = diag(1, e^{-i phi}) R
// where R is the real Jacobi rotation of [[a, |b|], [|b|, d]]. Only the
// columns of M are updated explicitly; rows follow from M' = M'^*.
template <typename Real>
void jacobi_rotate(ComplexMatrixT<Real>& m, ComplexMatrixT<Real>& v, Eigen::Index p,
                   Eigen::Index q) {
  using C = std::complex<Real>;
  const C b = m(p, q);
  const Real ab = std::abs(b);
  if (ab == Real(0)) return;
  const C ec = std::conj(b) / ab;
  const Real a = std::real(m(p, p));
  const Real d = std::real(m(q, q));
  const Real tau = (d - a) / (2 * ab);
  const Real t = (tau >= 0 ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(1 + tau * tau));
  const Real c = 1 / std::sqrt(1 + t * t);
  const Real s = t * c;
  const C s_ec = s * ec;
  const C c_ec = c * ec;
  const Eigen::Index n = m.rows();

  C* mp = m.col(p).data();
  C* mq = m.col(q).data();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const C mkp = mp[k];
    const C mkq = mq[k];
    mp[k] = c * mkp - mul(s_ec, mkq);
    mq[k] = s * mkp + mul(c_ec, mkq);
    m(p, k) = std::conj(mp[k]);
    m(q, k) = std::conj(mq[k]);
  }
  C* vp = v.col(p).data();
  C* vq = v.col(q).data();
  for (Eigen::Index k = 0; k < n; ++k) {
    const C vkp = vp[k];
    const C vkq = vq[k];
    vp[k] = c * vkp - mul(s_ec, vkq);
    vq[k] = s * vkp + mul(c_ec, vkq);
  }
  m(p, p) = a - t * ab;
  m(q, q) = d + t * ab;
  m(p, q) = C(0);
  m(q, p) = C(0);
}

}  // namespace detail

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// The input is symmetrized first, (H + H*)/2; inputs further than
/// `hermitian_tolerance * ||H||_F` from Hermitian are rejected. A unitary
/// `warm_start` (e.g. eigenvectors of a nearby matrix) is used as the initial
/// basis, which typically cuts the sweep count to one or two.
template <typename Real>
HermitianEigenT<Real> hermitian_eig(const ComplexMatrixT<Real>& h,
                                    const ComplexMatrixT<Real>* warm_start = nullptr,
                                    const JacobiOptions& opts = {}) {
  require_square(h, "Hermitian matrix");
  const Eigen::Index n = h.rows();
  const Real hnorm = h.norm();
  HermitianEigenT<Real> out;
  if (hnorm == Real(0)) {
    out.values = RealVectorT<Real>::Zero(n);
    out.vectors = ComplexMatrixT<Real>::Identity(n, n);
    return out;
  }
  if ((h - h.adjoint()).norm() > Real(opts.hermitian_tolerance) * hnorm)
    throw InvalidInput("matrix is not Hermitian within tolerance");

  ComplexMatrixT<Real> m = (h + h.adjoint()) * Real(0.5);
  ComplexMatrixT<Real> v;
  if (warm_start != nullptr && warm_start->rows() == n && warm_start->cols() == n) {
    v = *warm_start;
    m = v.adjoint() * m * v;
    m = (m + m.adjoint()).eval() * Real(0.5);
  } else {
    v = ComplexMatrixT<Real>::Identity(n, n);
  }

  const Real target = Real(opts.off_tolerance) * hnorm;
  const Real skip = target / Real(n);
  int sweep = 0;
  for (;; ++sweep) {
    if (detail::off_diagonal_norm(m) <= target) break;
    if (sweep >= opts.max_sweeps)
      throw ConvergenceError("Jacobi eigensolver did not converge",
                             static_cast<double>(detail::off_diagonal_norm(m) / hnorm));
    // Threshold sweep: entries below target/n cannot keep the off-diagonal
    // mass above target on their own, so they are left alone.
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q)
        if (std::abs(m(p, q)) > skip) detail::jacobi_rotate(m, v, p, q);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::real(m(i, i)) < std::real(m(j, j));
  });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = std::real(m(order[k], order[k]));
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

/// Spectral norm sqrt(lambda_max(A* A)).
template <typename Real>
Real operator_norm(const ComplexMatrixT<Real>& a) {
  if (a.size() == 0) return Real(0);
  if (!all_finite(a)) throw InvalidInput("matrix has non-finite entries");
  const ComplexMatrixT<Real> gram = a.adjoint() * a;
  const Real top = hermitian_eig<Real>(gram).max();
  return std::sqrt(std::max(top, Real(0)));
}

/// f(H) = V diag(f(lambda)) V* for Hermitian H.
template <typename Real, typename F>
ComplexMatrixT<Real> hermitian_apply(const HermitianEigenT<Real>& eig, F&& f) {
  const Eigen::Index n = eig.values.size();
  ComplexMatrixT<Real> scaled = eig.vectors;
  for (Eigen::Index k = 0; k < n; ++k) scaled.col(k) *= f(eig.values(k));
  return scaled * eig.vectors.adjoint();
}

// ---------------------------------------------------------------------------
// LU with partial pivoting

template <typename Real>
struct LUFactorizationT {
  ComplexMatrixT<Real> factors;      // unit-lower L below the diagonal, U on and above
  std::vector<Eigen::Index> pivots;  // row i of P*A is row pivots[i] of A
  Eigen::PartialPivLU<ComplexMatrixT<Real>> lu;

  Eigen::Index size() const { return factors.rows(); }
};
using LUFactorization = LUFactorizationT<double>;

/// P*A = L*U. Throws SingularMatrix when a pivot falls below 1e-14 * ||A||_F.
template <typename Real>
LUFactorizationT<Real> lu_factor(const ComplexMatrixT<Real>& a) {
  require_square(a);
  LUFactorizationT<Real> f;
  f.lu.compute(a);
  f.factors = f.lu.matrixLU();
  const Real threshold = Real(1e-14) * a.norm();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (!(std::abs(f.factors(i, i)) > threshold))
      throw SingularMatrix("numerically singular matrix: pivot " + std::to_string(i) +
                           " below 1e-14*||A||_F");
  const auto& perm = f.lu.permutationP().indices();
  f.pivots.assign(static_cast<std::size_t>(a.rows()), 0);
  for (Eigen::Index i = 0; i < a.rows(); ++i) f.pivots[static_cast<std::size_t>(perm(i))] = i;
  return f;
}

template <typename Real>
ComplexMatrixT<Real> lu_solve(const LUFactorizationT<Real>& f, const ComplexMatrixT<Real>& b) {
  if (b.rows() != f.size())
    throw InvalidInput("right-hand side has " + std::to_string(b.rows()) + " rows, expected " +
                       std::to_string(f.size()));
  return f.lu.solve(b);
}

/// Solves A X = B.
template <typename Real>
ComplexMatrixT<Real> lu_solve(const ComplexMatrixT<Real>& a, const ComplexMatrixT<Real>& b) {
  return lu_solve(lu_factor(a), b);
}

template <typename Real>
ComplexMatrixT<Real> inverse(const ComplexMatrixT<Real>& a) {
  return lu_solve(a, ComplexMatrixT<Real>::Identity(a.rows(), a.cols()).eval());
}

}  // namespace sectorial
