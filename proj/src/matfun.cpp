#include "sectorial/matfun.hpp"

#include <cmath>
#include <numbers>

#include "sectorial/fov.hpp"

namespace sectorial {

namespace {

constexpr double kPi = std::numbers::pi;

double require_accretive(const ComplexMatrix& a, const char* op) {
  require_square(a);
  const double delta = is_accretive(a, 0.0).delta;
  if (!(delta > 0))
    throw DomainError(std::string(op) + ": matrix is not accretive (lambda_min(Re A) = " +
                      std::to_string(delta) + ")");
  return delta;
}

PowerResult circle_power(const ComplexMatrix& a, double t, const PowerOptions& opts) {
  const ContourSpec contour = contour_for(a);
  const Eigen::Index n = a.rows();
  const ComplexMatrix eye = ComplexMatrix::Identity(n, n);

  // (1/2 pi i) int z^t (zI - A)^{-1} dz with dz = i r e^{i phi} dphi.
  auto node = [&](double phi) -> ComplexMatrix {
    const Complex dir = std::polar(1.0, phi);
    const Complex z = contour.center + contour.radius * dir;
    const ComplexMatrix shifted = z * eye - a;
    return (std::pow(z, t) * contour.radius * dir) * lu_solve(shifted, eye);
  };

  PowerResult out;
  out.t = t;
  out.ill_conditioned = contour.ill_conditioned;
  int m = contour.nodes;
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < m; ++k) sum += node(2 * kPi * k / m);
  ComplexMatrix level = sum / static_cast<double>(m);
  double diff = std::numeric_limits<double>::infinity();
  while (m < opts.max_nodes) {
    ComplexMatrix odd = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < m; ++k) odd += node(2 * kPi * (k + 0.5) / m);
    const ComplexMatrix next = 0.5 * level + odd / static_cast<double>(2 * m);
    m *= 2;
    diff = (next - level).norm();
    level = next;
    if (diff <= opts.relative_tolerance * level.norm()) {
      out.converged = true;
      break;
    }
  }
  out.matrix = level;
  out.nodes = m;
  out.quadrature_error = diff;
  return out;
}

PowerResult branch_cut_power(const ComplexMatrix& a, double t, double delta,
                             const PowerOptions& opts) {
  const Eigen::Index n = a.rows();
  const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
  const double norm_a = operator_norm(a);
  const double weight = std::sin(kPi * t) / kPi;

  // Tails: ||A (sI + A)^{-1}|| <= min(2, ||A|| / s) for accretive A, and
  // ||A^t|| >= rho(A^t) >= delta^t. Truncate where each tail is below
  // eps * delta^t.
  constexpr double kTail = 1e-16;
  const double floor = std::pow(delta, t);
  const double u_lo = std::log(kTail * floor * t / (2.0 * weight)) / t;
  const double u_hi = std::log(kTail * floor * (1.0 - t) / (norm_a * weight)) / (t - 1.0);
  const double u_c = 0.5 * (std::log(delta) + std::log(norm_a));
  const double v_lo = std::asinh(u_lo - u_c);
  const double v_hi = std::asinh(u_hi - u_c);

  // For t near 1 the upper limit reaches s ~ e^700; past s = 1 the node is
  // evaluated as e^{(t-1)u} (I + A/s)^{-1} A so nothing overflows.
  auto node = [&](double v) -> ComplexMatrix {
    const double u = u_c + std::sinh(v);
    if (u > 0.0) {
      const ComplexMatrix shifted = eye + std::exp(-u) * a;
      return (std::exp((t - 1.0) * u) * std::cosh(v)) * lu_solve(shifted, a);
    }
    const ComplexMatrix shifted = std::exp(u) * eye + a;
    return (std::exp(t * u) * std::cosh(v)) * lu_solve(shifted, a);
  };

  int intervals = 16;
  double h = (v_hi - v_lo) / intervals;
  ComplexMatrix sum = 0.5 * (node(v_lo) + node(v_hi));
  for (int j = 1; j < intervals; ++j) sum += node(v_lo + j * h);
  ComplexMatrix level = h * sum;

  PowerResult out;
  out.t = t;
  double diff = std::numeric_limits<double>::infinity();
  int refinements = 0;
  while (intervals < opts.max_nodes) {
    ComplexMatrix mid = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < intervals; ++j) mid += node(v_lo + (j + 0.5) * h);
    h *= 0.5;
    intervals *= 2;
    const ComplexMatrix next = 0.5 * level + h * mid;
    diff = (next - level).norm();
    level = next;
    ++refinements;
    if (refinements >= 2 && diff <= opts.relative_tolerance * level.norm()) {
      out.converged = true;
      break;
    }
  }
  out.matrix = weight * level;
  out.nodes = intervals + 1;
  out.quadrature_error = weight * diff + 2.0 * kTail * floor;
  return out;
}

}  // namespace

ContourSpec contour_for(const ComplexMatrix& a) {
  const double delta = require_accretive(a, "contour_for");
  const double w = numerical_radius(a, 1e-10 * std::max(1.0, a.norm())).value;
  ContourSpec c;
  c.center = std::max(w * w / delta, 2.0 * w);
  c.radius = 0.5 * (c.center + std::sqrt(std::max(c.center * c.center - w * w, 0.0)));
  c.nodes = 64;
  c.ill_conditioned = delta / w < 1e-6;
  return c;
}

PowerResult fractional_power(const ComplexMatrix& a, double t, const PowerOptions& opts) {
  if (!(t > 0.0 && t < 1.0)) throw InvalidInput("fractional_power: exponent must lie in (0, 1)");
  const double delta = require_accretive(a, "fractional_power");
  PowerResult out = opts.route == PowerRoute::circle ? circle_power(a, t, opts)
                                                     : branch_cut_power(a, t, delta, opts);
  out.ill_conditioned = out.ill_conditioned || delta / operator_norm(a) < 1e-6;
  return out;
}

PowerResult principal_power(const ComplexMatrix& a, double t, const PowerOptions& opts) {
  if (t == 0.0 || t == 1.0) {
    require_accretive(a, "principal_power");
    PowerResult out;
    out.t = t;
    out.matrix = t == 0.0 ? ComplexMatrix(ComplexMatrix::Identity(a.rows(), a.cols())) : a;
    out.converged = true;
    return out;
  }
  return fractional_power(a, t, opts);
}

SquareRoot sqrt_db(const ComplexMatrix& a) {
  require_accretive(a, "sqrt_db");
  const Eigen::Index n = a.rows();
  ComplexMatrix x = a;
  ComplexMatrix y = ComplexMatrix::Identity(n, n);
  SquareRoot out;
  for (int k = 1; k <= 100; ++k) {
    ComplexMatrix x_inv, y_inv;
    try {
      x_inv = inverse(x);
      y_inv = inverse(y);
    } catch (const SingularMatrix& e) {
      throw SingularMatrix(std::string("sqrt_db: singular iterate at step ") +
                           std::to_string(k) + ": " + e.what());
    }
    ComplexMatrix x_next = 0.5 * (x + y_inv);
    y = 0.5 * (y + x_inv);
    const double step = (x_next - x).norm();
    x = std::move(x_next);
    out.iterations = k;
    out.last_step = step;
    if (step <= 1e-12 * x.norm()) {
      out.matrix = x;
      return out;
    }
  }
  throw ConvergenceError("sqrt_db: no convergence in 100 iterations", out.last_step);
}

SquareRoot power_chain(const ComplexMatrix& a, int n_halvings) {
  if (n_halvings < 1 || n_halvings > 6)
    throw InvalidInput("power_chain: number of halvings must be in [1, 6]");
  SquareRoot out{a, 0.0, 0};
  for (int k = 0; k < n_halvings; ++k) {
    const double carried = out.last_step;
    auto next = sqrt_db(out.matrix);
    out.last_step = next.last_step + carried;
    out.iterations += next.iterations;
    out.matrix = std::move(next.matrix);
  }
  return out;
}

}  // namespace sectorial
