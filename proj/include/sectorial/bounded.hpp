#pragma once

// Midpoint-radius arithmetic: a value together with a bound on its absolute
// error. Used to carry the tolerances of radii, norms and matrix functions
// through the right-hand sides of the catalog.

#include <algorithm>
#include <cmath>

namespace sectorial {

struct Bounded {
  double value = 0.0;
  double error = 0.0;

  double lower() const { return value - error; }
  double upper() const { return value + error; }
};

inline Bounded exact(double v) { return {v, 0.0}; }

inline Bounded operator+(Bounded a, Bounded b) { return {a.value + b.value, a.error + b.error}; }
inline Bounded operator-(Bounded a, Bounded b) { return {a.value - b.value, a.error + b.error}; }
inline Bounded operator-(Bounded a) { return {-a.value, a.error}; }

inline Bounded operator*(Bounded a, Bounded b) {
  return {a.value * b.value,
          std::abs(a.value) * b.error + std::abs(b.value) * a.error + a.error * b.error};
}
inline Bounded operator*(double s, Bounded a) { return {s * a.value, std::abs(s) * a.error}; }
inline Bounded operator*(Bounded a, double s) { return s * a; }
inline Bounded operator/(Bounded a, double s) { return {a.value / s, a.error / std::abs(s)}; }

/// f applied to a monotone (either direction) function on [lower, upper].
template <typename F>
Bounded monotone(Bounded a, F&& f) {
  const double v = f(a.value);
  const double lo = f(a.lower());
  const double hi = f(a.upper());
  return {v, std::max(std::abs(lo - v), std::abs(hi - v))};
}

/// Square root; the domain is clamped at zero.
inline Bounded sqrt(Bounded a) {
  return monotone(a, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

/// x^p for p > 0 on the non-negative axis.
inline Bounded pow(Bounded a, double p) {
  return monotone(a, [p](double x) { return std::pow(std::max(x, 0.0), p); });
}

inline Bounded square(Bounded a) { return a * a; }

inline Bounded abs(Bounded a) { return {std::abs(a.value), a.error}; }

inline Bounded max(Bounded a, Bounded b) {
  const double v = std::max(a.value, b.value);
  return {v, std::max(std::abs(std::max(a.lower(), b.lower()) - v),
                      std::abs(std::max(a.upper(), b.upper()) - v))};
}

inline Bounded min(Bounded a, Bounded b) {
  const double v = std::min(a.value, b.value);
  return {v, std::max(std::abs(std::min(a.lower(), b.lower()) - v),
                      std::abs(std::min(a.upper(), b.upper()) - v))};
}

}  // namespace sectorial
