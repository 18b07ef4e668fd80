#pragma once

// Principal fractional powers of accretive matrices.

#include "sectorial/linalg.hpp"

namespace sectorial {

/// Circle z = center + radius e^{i phi} for the Dunford-Taylor integral.
struct ContourSpec {
  double center = 0.0;
  double radius = 0.0;
  int nodes = 64;
  bool ill_conditioned = false;  // lambda_min(Re A) / w(A) < 1e-6
};

/// A circle in the open right half-plane enclosing W(A).
///
/// With delta = lambda_min(Re A) and w = w(A), every z in W(A) satisfies
/// |z - c|^2 <= w^2 - 2 c delta + c^2; c = max(w^2/delta, 2w) and
/// r = (c + sqrt(c^2 - w^2)) / 2 put W(A) strictly inside and 0 strictly outside.
ContourSpec contour_for(const ComplexMatrix& a);

enum class PowerRoute {
  /// Contour collapsed onto the branch cut (-inf, 0]:
  /// A^t = sin(pi t)/pi * int_0^inf s^{t-1} A (sI + A)^{-1} ds, in the
  /// variable s = exp(u_c + sinh v), trapezoidal in v.
  branch_cut,
  /// Trapezoidal rule on the circle of contour_for(A).
  circle,
};

struct PowerResult {
  ComplexMatrix matrix;
  double quadrature_error = 0.0;  // node-doubling difference (Frobenius) plus tail bound
  double t = 0.0;
  int nodes = 0;
  bool converged = false;
  bool ill_conditioned = false;
};

struct PowerOptions {
  PowerRoute route = PowerRoute::branch_cut;
  double relative_tolerance = 1e-10;
  int max_nodes = 1 << 14;
};

/// A^t for accretive A and t in (0, 1), principal branch.
///
/// Nodes are doubled until successive levels differ by at most
/// relative_tolerance * ||A^t||_F. If max_nodes is exceeded the last level is
/// returned with converged = false and the achieved difference.
PowerResult fractional_power(const ComplexMatrix& a, double t, const PowerOptions& opts = {});

/// Like fractional_power but also accepts t = 0 (identity) and t = 1 (A itself).
PowerResult principal_power(const ComplexMatrix& a, double t, const PowerOptions& opts = {});

struct SquareRoot {
  ComplexMatrix matrix;
  double last_step = 0.0;  // ||X_{k+1} - X_k||_F at exit; error estimate
  int iterations = 0;
};

/// Principal square root by the coupled Denman-Beavers iteration
/// X <- (X + Y^{-1})/2, Y <- (Y + X^{-1})/2 from X = A, Y = I.
SquareRoot sqrt_db(const ComplexMatrix& a);

/// A^{1/2^n} by n successive Denman-Beavers square roots, 1 <= n <= 6.
SquareRoot power_chain(const ComplexMatrix& a, int n_halvings);

}  // namespace sectorial
