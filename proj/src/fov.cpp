#include "sectorial/fov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>

namespace sectorial {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

Complex rayleigh(const ComplexMatrix& a, const ComplexVector& x) {
  return x.dot(a * x);  // conj(x)^T A x
}

ComplexMatrix rotated_real_part(const CartesianParts& parts, double theta) {
  return std::cos(theta) * parts.re + std::sin(theta) * parts.im;
}

// Modulus of the intersection of Re(e^{-ia} z) = pa and Re(e^{-ib} z) = pb,
// with b - a = gap in (0, pi).
double vertex_modulus(double pa, double pb, double gap) {
  const double y = (pb - pa * std::cos(gap)) / std::sin(gap);
  return std::hypot(pa, y);
}

Complex vertex(double a, double pa, double b, double pb) {
  double gap = b - a;
  if (gap <= 0) gap += kTwoPi;
  const double y = (pb - pa * std::cos(gap)) / std::sin(gap);
  return std::polar(1.0, a) * Complex(pa, y);
}

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double distance_to_convex(Complex p, const std::vector<Complex>& hull) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  if (hull.size() == 1) return std::abs(p - hull[0]);
  if (hull.size() >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < hull.size(); ++i)
      if (cross(hull[i], hull[(i + 1) % hull.size()], p) < 0) {
        inside = false;
        break;
      }
    if (inside) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i)
    best = std::min(best, point_segment_distance(p, hull[i], hull[(i + 1) % hull.size()]));
  return best;
}

}  // namespace

SupportPoint support_function(const ComplexMatrix& a, double theta) {
  require_square(a);
  const auto parts = cartesian_parts(a);
  const auto eig = hermitian_eig<double>(rotated_real_part(parts, theta));
  SupportPoint out;
  out.p = eig.max();
  out.x = eig.vectors.col(eig.values.size() - 1);
  out.point = rayleigh(a, out.x);
  return out;
}

CertifiedRadius numerical_radius(const ComplexMatrix& a, double tol) {
  if (!(tol > 0)) throw InvalidInput("numerical_radius: tolerance must be positive");
  require_square(a);
  const auto n = static_cast<double>(a.rows());
  const double fro = a.norm();
  CertifiedRadius out;
  if (fro == 0) return out;

  // Round-off floor of a Hermitian eigenvalue / Rayleigh quotient.
  const double floor = 32.0 * n * kEps * fro;
  const double target = std::max(tol - floor, floor);
  constexpr int kInitial = 6;           // directions in [0, pi); each gives two lines
  constexpr int kMaxEvaluations = 200000;
  constexpr double kMinGap = 1e-13;

  const auto parts = cartesian_parts(a);

  struct Line {
    double p;
    double base;  // direction in [0, pi) whose eigensolve produced this line
  };
  std::map<double, Line> lines;
  std::map<double, ComplexMatrix> bases;
  double lower = 0.0;

  auto evaluate = [&](double base, const ComplexMatrix* warm) {
    const auto eig = hermitian_eig<double>(rotated_real_part(parts, base), warm);
    ++out.evaluations;
    const Eigen::Index last = eig.values.size() - 1;
    const Complex top = rayleigh(a, eig.vectors.col(last));
    const Complex bottom = rayleigh(a, eig.vectors.col(0));
    lower = std::max({lower, std::abs(top), std::abs(bottom)});
    lines[base] = Line{eig.max(), base};
    lines[base + kPi] = Line{-eig.min(), base};
    bases[base] = eig.vectors;
  };

  for (int j = 0; j < kInitial; ++j) {
    const ComplexMatrix* warm = bases.empty() ? nullptr : &bases.rbegin()->second;
    evaluate(kPi * j / kInitial, warm);
  }

  struct Cell {
    double bound;
    double a;
    double b;
    bool operator<(const Cell& o) const { return bound < o.bound; }
  };
  std::priority_queue<Cell> queue;

  auto successor = [&](std::map<double, Line>::const_iterator it) {
    ++it;
    return it == lines.end() ? lines.begin() : it;
  };
  auto push_cell = [&](std::map<double, Line>::const_iterator it) {
    const auto next = successor(it);
    double gap = next->first - it->first;
    if (gap <= 0) gap += kTwoPi;
    queue.push(Cell{vertex_modulus(it->second.p, next->second.p, gap), it->first, next->first});
  };
  for (auto it = lines.cbegin(); it != lines.cend(); ++it) push_cell(it);

  double upper = lower;
  while (!queue.empty()) {
    const Cell top = queue.top();
    const auto it = lines.find(top.a);
    if (it == lines.end() || successor(it)->first != top.b) {
      queue.pop();  // stale: split since it was queued
      continue;
    }
    upper = top.bound;
    double gap = top.b - top.a;
    if (gap <= 0) gap += kTwoPi;
    if (0.5 * (upper - lower) <= target || gap < kMinGap || out.evaluations >= kMaxEvaluations)
      break;
    queue.pop();

    // Split at the normal direction of the vertex: the supporting line there
    // touches W(A) near the vertex, which converges much faster than bisection.
    // Clamped away from the cell ends so every split makes progress.
    const auto next = successor(it);
    const double offset =
        std::remainder(std::arg(vertex(top.a, it->second.p, top.b, next->second.p)) - top.a, kTwoPi);
    const double frac = std::clamp(offset / gap, 0.05, 0.95);
    double mid = std::fmod(top.a + frac * gap, kTwoPi);
    const double base = mid >= kPi ? mid - kPi : mid;
    if (bases.count(base) != 0) break;  // angle resolution exhausted
    const ComplexMatrix warm = bases.at(it->second.base);
    evaluate(base, &warm);
    for (double angle : {base, base + kPi}) {
      auto at = lines.find(angle);
      auto prev = at == lines.begin() ? std::prev(lines.end()) : std::prev(at);
      push_cell(prev);
      push_cell(at);
    }
  }
  upper = std::max(upper, lower);
  out.value = 0.5 * (upper + lower);
  out.error_bound = 0.5 * (upper - lower) + floor;
  return out;
}

BoundaryScan boundary_polygon(const ComplexMatrix& a, int n_angles) {
  if (n_angles < 8) throw InvalidInput("boundary_polygon: need at least 8 directions");
  require_square(a);
  const auto parts = cartesian_parts(a);
  BoundaryScan scan;
  scan.angles.reserve(static_cast<std::size_t>(n_angles));
  ComplexMatrix warm;
  for (int j = 0; j < n_angles; ++j) {
    const double theta = kTwoPi * j / n_angles;
    const auto eig =
        hermitian_eig<double>(rotated_real_part(parts, theta), j == 0 ? nullptr : &warm);
    warm = eig.vectors;
    scan.angles.push_back(theta);
    scan.support_values.push_back(eig.max());
    scan.boundary_points.push_back(rayleigh(a, eig.vectors.col(eig.values.size() - 1)));
  }
  return scan;
}

std::vector<Complex> BoundaryScan::outer_polygon() const {
  std::vector<Complex> out;
  const std::size_t m = angles.size();
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    out.push_back(vertex(angles[i], support_values[i], angles[j], support_values[j]));
  }
  return out;
}

std::vector<Complex> BoundaryScan::inner_polygon() const {
  std::vector<Complex> pts = boundary_points;
  std::sort(pts.begin(), pts.end(), [](Complex x, Complex y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  // Andrew's monotone chain.
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double BoundaryScan::hausdorff_gap() const {
  const auto inner = inner_polygon();
  double gap = 0.0;
  for (const auto& v : outer_polygon()) gap = std::max(gap, distance_to_convex(v, inner));
  return gap;
}

double default_margin(const ComplexMatrix& a) { return 1e-10 * operator_norm(a); }

Accretivity is_accretive(const ComplexMatrix& a, double margin) {
  if (margin < 0) throw InvalidInput("is_accretive: margin must be non-negative");
  const auto parts = cartesian_parts(a);
  Accretivity out;
  out.delta = hermitian_eig<double>(parts.re).min();
  out.flag = out.delta > margin;
  return out;
}

bool is_accretive_dissipative(const ComplexMatrix& a, double margin) {
  if (margin < 0) throw InvalidInput("is_accretive_dissipative: margin must be non-negative");
  const auto parts = cartesian_parts(a);
  return hermitian_eig<double>(parts.re).min() > margin &&
         hermitian_eig<double>(parts.im).min() > margin;
}

SectorGeometry sector_geometry(const ComplexMatrix& a) {
  require_square(a);
  const auto parts = cartesian_parts(a);
  const auto eig_p = hermitian_eig<double>(parts.re);
  SectorGeometry g;
  g.delta = eig_p.min();
  if (!(g.delta > 0))
    throw DomainError("matrix is not accretive (lambda_min(Re A) = " + std::to_string(g.delta) +
                      "); it lies in no sector");
  const double norm_a = operator_norm(a);
  const double norm_k = operator_norm(parts.im);
  if (norm_k <= 1e-12 * norm_a) {
    g.hermitian = true;
    return g;
  }
  const ComplexMatrix p_inv_half = hermitian_apply(eig_p, [](double l) { return 1.0 / std::sqrt(l); });
  const ComplexMatrix m = p_inv_half * parts.im * p_inv_half;
  const auto eig_m = hermitian_eig<double>(m);
  g.rho_min = eig_m.min();
  g.rho_max = eig_m.max();
  const double n = static_cast<double>(a.rows());
  const double kappa = eig_p.max() / g.delta;
  const double rho = std::max(std::abs(g.rho_min), std::abs(g.rho_max));
  g.rho_error = 64.0 * n * kEps * (rho * kappa + norm_k / g.delta);
  return g;
}

SectorCone sectorial_index(const ComplexMatrix& a) {
  const auto g = sector_geometry(a);
  if (g.hermitian) return SectorCone{0.0, 0.0};
  const double rho = std::max(std::abs(g.rho_min), std::abs(g.rho_max));
  return SectorCone{std::atan(rho), g.rho_error / (1.0 + rho * rho)};
}

namespace {

// Root of a function that is positive at lo and negative at hi.
template <typename F>
double bisect(F&& f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 4 * kEps * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> arg_range_sweep(const ComplexMatrix& a, int n_angles) {
  require_square(a);
  if (n_angles < 8) throw InvalidInput("arg_range_sweep: need at least 8 directions");
  const auto parts = cartesian_parts(a);
  if (!(hermitian_eig<double>(parts.re).min() > 0))
    throw DomainError("matrix is not accretive; it lies in no sector");
  auto p = [&](double theta) { return hermitian_eig<double>(rotated_real_part(parts, theta)).max(); };

  // The supporting line with normal angle pi/2 + alpha passes through the
  // origin exactly when alpha is an extreme argument of W(A). p is positive
  // at theta = 0 and negative at theta = +-pi; sweep to bracket, then bisect.
  double hi_lo = 0.0, hi_hi = kPi;
  double lo_lo = -kPi, lo_hi = 0.0;
  for (int j = 1; j < n_angles; ++j) {
    const double theta = kPi * j / n_angles;
    const double up = p(theta);
    if (up > 0) hi_lo = std::max(hi_lo, theta);
    else hi_hi = std::min(hi_hi, theta);
    const double down = p(-theta);
    if (down > 0) lo_hi = std::min(lo_hi, -theta);
    else lo_lo = std::max(lo_lo, -theta);
  }
  const double theta_up = bisect(p, hi_lo, hi_hi);
  const double theta_down = bisect([&](double t) { return -p(t); }, lo_lo, lo_hi);
  return {theta_down + kPi / 2, theta_up - kPi / 2};
}

SectorCone sectorial_index_sweep(const ComplexMatrix& a, int n_angles) {
  const auto [lo, hi] = arg_range_sweep(a, n_angles);
  return SectorCone{std::max(std::abs(lo), std::abs(hi)), 0.0};
}

RayCone cone_fit(const ComplexMatrix& a) {
  const auto g = sector_geometry(a);
  RayCone cone;
  if (g.hermitian) {
    cone.confined = true;
    cone.both_orientations = true;
    return cone;
  }
  constexpr double kAngleTol = 1e-12;
  double lo = std::atan(g.rho_min);
  double hi = std::atan(g.rho_max);
  if (std::abs(lo) <= kAngleTol) lo = 0.0;
  if (std::abs(hi) <= kAngleTol) hi = 0.0;
  cone.alpha_min = lo;
  cone.alpha_max = hi;
  cone.error = g.rho_error;
  if (hi <= 0) {
    cone.confined = true;
    cone.orientation = ConeOrientation::lower;
    cone.theta1 = -hi;
    cone.theta2 = -lo;
    cone.both_orientations = lo == 0;
  } else if (lo >= 0) {
    cone.confined = true;
    cone.orientation = ConeOrientation::upper;
    cone.theta1 = lo;
    cone.theta2 = hi;
  }
  return cone;
}

}  // namespace sectorial
