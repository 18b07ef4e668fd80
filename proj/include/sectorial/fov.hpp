#pragma once

// Numerical-range (field of values) geometry.

#include <cmath>
#include <numbers>
#include <vector>

#include "sectorial/linalg.hpp"

namespace sectorial {

/// Half-angle gamma of the sector S_gamma = {z : Re z > 0, |Im z| <= tan(gamma) Re z}.
struct SectorCone {
  double gamma = 0.0;
  double error = 0.0;  // estimated absolute error of gamma (radians)

  double tan() const { return std::tan(gamma); }
  double sin() const { return std::sin(gamma); }
  double cos() const { return std::cos(gamma); }
  double csc() const { return 1.0 / std::sin(gamma); }
};

enum class ConeOrientation {
  lower,  // W(A) in {r e^{-i theta} : theta1 <= theta <= theta2}
  upper,  // W(A) in {r e^{+i theta} : theta1 <= theta <= theta2}
};

/// Cone {r e^{-+i theta} : theta1 <= theta <= theta2} containing W(A).
struct RayCone {
  double theta1 = 0.0;
  double theta2 = 0.0;
  ConeOrientation orientation = ConeOrientation::lower;
  bool confined = false;           // false when arg W(A) straddles the real axis
  bool both_orientations = false;  // W(A) on the positive real axis
  double alpha_min = 0.0;          // range of arg z over W(A)
  double alpha_max = 0.0;
  double error = 0.0;

  /// max{theta2, pi/2 - theta1}: A and iA (or -iA) both lie in this sector.
  double gamma1() const { return std::max(theta2, std::numbers::pi / 2 - theta1); }
};

struct SupportPoint {
  double p = 0.0;     // lambda_max(Re(e^{-i theta} A))
  ComplexVector x;    // unit top eigenvector
  Complex point;      // <A x, x>, a point of the boundary of W(A)
};

/// Support function of W(A) in direction theta.
SupportPoint support_function(const ComplexMatrix& a, double theta);

struct CertifiedRadius {
  double value = 0.0;
  double error_bound = 0.0;  // value - error_bound <= w(A) <= value + error_bound
  int evaluations = 0;       // Hermitian eigensolves performed

  double lower() const { return value - error_bound; }
  double upper() const { return value + error_bound; }
};

/// Numerical radius w(A) = max |<Ax,x>| with a certified enclosure.
///
/// Lower bounds come from boundary points <A x_theta, x_theta>; upper bounds
/// from the vertices of the outer polygon cut out by the supporting lines.
/// The polygon is refined adaptively (branch and bound on the vertex moduli)
/// until the enclosure half-width is within `tol`.
CertifiedRadius numerical_radius(const ComplexMatrix& a, double tol = 1e-10);

struct BoundaryScan {
  std::vector<double> angles;
  std::vector<double> support_values;
  std::vector<Complex> boundary_points;

  /// Vertices of the outer polygon, the intersection of the half-planes
  /// Re(e^{-i theta} z) <= p(theta).
  std::vector<Complex> outer_polygon() const;
  /// Convex hull of the boundary points (counter-clockwise).
  std::vector<Complex> inner_polygon() const;
  /// Hausdorff distance between inner and outer polygon.
  double hausdorff_gap() const;
};

/// Samples the boundary of W(A) on N equally spaced directions in [0, 2 pi).
BoundaryScan boundary_polygon(const ComplexMatrix& a, int n_angles);

struct Accretivity {
  bool flag = false;
  double delta = 0.0;  // lambda_min(Re A)
};

/// Default positivity margin 1e-10 * ||A||.
double default_margin(const ComplexMatrix& a);

Accretivity is_accretive(const ComplexMatrix& a, double margin = 0.0);
bool is_accretive_dissipative(const ComplexMatrix& a, double margin = 0.0);

/// Spectrum of P^{-1/2} K P^{-1/2} (P = Re A, K = Im A): its extreme
/// eigenvalues are tan of the extreme arguments of W(A).
struct SectorGeometry {
  double delta = 0.0;  // lambda_min(P)
  double rho_min = 0.0;
  double rho_max = 0.0;
  double rho_error = 0.0;
  bool hermitian = false;  // ||Im A|| <= 1e-12 ||A||
};

SectorGeometry sector_geometry(const ComplexMatrix& a);

/// Minimal gamma with W(A) in S_gamma, from the generalized eigenproblem.
/// Throws DomainError for non-accretive input.
SectorCone sectorial_index(const ComplexMatrix& a);

/// Independent route to the same index: locates the two supporting lines of
/// W(A) through the origin by sweeping and bisecting the support function.
SectorCone sectorial_index_sweep(const ComplexMatrix& a, int n_angles = 64);

/// Extreme arguments [alpha_min, alpha_max] of W(A) from the support-function sweep.
std::pair<double, double> arg_range_sweep(const ComplexMatrix& a, int n_angles = 64);

/// Tightest cone {r e^{-+i theta} : theta1 <= theta <= theta2} containing W(A).
RayCone cone_fit(const ComplexMatrix& a);

}  // namespace sectorial
