#include "sectorial/generators.hpp"

#include <cmath>
#include <numbers>

namespace sectorial {

namespace {

constexpr double kPi = std::numbers::pi;

void check_common(const EnsembleSpec& spec) {
  if (spec.n < 1) throw InvalidInput("ensemble dimension must be positive");
  if (!(spec.r_min > 0.0) || !(spec.r_max >= spec.r_min))
    throw InvalidInput("modulus range must satisfy 0 < r_min <= r_max");
}

// P^{1/2} with P = U diag(p) U^*, p uniform in [r_min, r_max].
ComplexMatrix random_sqrt_pd(const EnsembleSpec& spec, Rng& rng) {
  const ComplexMatrix u = random_unitary(spec.n, rng);
  ComplexVector d(spec.n);
  for (int i = 0; i < spec.n; ++i) d(i) = std::sqrt(rng.uniform(spec.r_min, spec.r_max));
  return u * d.asDiagonal() * u.adjoint();
}

// P^{1/2} (I + iS) P^{1/2} with S = W diag(s) W^*.
ComplexMatrix assemble(const EnsembleSpec& spec, Rng& rng, const std::vector<double>& s) {
  const ComplexMatrix half = random_sqrt_pd(spec, rng);
  const ComplexMatrix w = random_unitary(spec.n, rng);
  ComplexVector d(spec.n);
  for (int i = 0; i < spec.n; ++i) d(i) = Complex(1.0, s[static_cast<std::size_t>(i)]);
  const ComplexMatrix inner = w * d.asDiagonal() * w.adjoint();
  return half * inner * half;
}

}  // namespace

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::sectorial: return "sectorial";
    case EnsembleKind::accretive_dissipative: return "accretive-dissipative";
    case EnsembleKind::double_commuting: return "double-commuting";
    case EnsembleKind::cone: return "cone";
    case EnsembleKind::generic: return "generic";
  }
  return "?";
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  for (auto k : {EnsembleKind::sectorial, EnsembleKind::accretive_dissipative,
                 EnsembleKind::double_commuting, EnsembleKind::cone, EnsembleKind::generic})
    if (to_string(k) == name) return k;
  throw InvalidInput("unknown ensemble kind '" + name + "'");
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ index);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::sqrt(0.5);
}

ComplexMatrix random_unitary(int n, Rng& rng) {
  if (n < 1) throw InvalidInput("random_unitary: dimension must be positive");
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const double mod = std::abs(r(j, j));
    if (mod > 0.0) q.col(j) *= r(j, j) / mod;
  }
  return q;
}

ComplexMatrix random_unitary(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(n, rng);
}

ComplexMatrix gen_sectorial(const EnsembleSpec& spec, Rng& rng) {
  check_common(spec);
  if (!(spec.gamma >= 0.0 && spec.gamma < kPi / 2))
    throw InvalidInput("gen_sectorial: gamma must lie in [0, pi/2)");
  const double t = std::tan(spec.gamma);
  std::vector<double> s(static_cast<std::size_t>(spec.n));
  for (auto& v : s) v = rng.uniform(-t, t);
  s[0] = rng.uniform() < 0.5 ? -t : t;  // attains the index
  return assemble(spec, rng, s);
}

ComplexMatrix gen_sectorial(const EnsembleSpec& spec) {
  Rng rng(spec.seed);
  return gen_sectorial(spec, rng);
}

ComplexMatrix gen_accretive_dissipative(const EnsembleSpec& spec, Rng& rng) {
  check_common(spec);
  if (!(spec.gamma > 0.0 && spec.gamma < kPi / 2))
    throw InvalidInput("gen_accretive_dissipative: gamma must lie in (0, pi/2)");
  const double t = std::tan(spec.gamma);
  std::vector<double> s(static_cast<std::size_t>(spec.n));
  for (auto& v : s) v = rng.uniform(0.1 * t, t);
  s[0] = t;
  return assemble(spec, rng, s);
}

ComplexMatrix gen_accretive_dissipative(const EnsembleSpec& spec) {
  Rng rng(spec.seed);
  return gen_accretive_dissipative(spec, rng);
}

std::vector<ComplexMatrix> gen_double_commuting(const EnsembleSpec& spec, Rng& rng) {
  check_common(spec);
  if (spec.family_size < 1) throw InvalidInput("gen_double_commuting: family_size must be >= 1");
  if (!(spec.gamma >= 0.0 && spec.gamma < kPi / 2))
    throw InvalidInput("gen_double_commuting: gamma must lie in [0, pi/2)");
  const ComplexMatrix u = random_unitary(spec.n, rng);
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(spec.family_size));
  for (int k = 0; k < spec.family_size; ++k) {
    ComplexVector d(spec.n);
    for (int i = 0; i < spec.n; ++i)
      d(i) = std::polar(rng.uniform(spec.r_min, spec.r_max), rng.uniform(-spec.gamma, spec.gamma));
    out.push_back(u * d.asDiagonal() * u.adjoint());
  }
  return out;
}

std::vector<ComplexMatrix> gen_double_commuting(const EnsembleSpec& spec) {
  Rng rng(spec.seed);
  return gen_double_commuting(spec, rng);
}

ComplexMatrix gen_cone(const EnsembleSpec& spec, Rng& rng) {
  check_common(spec);
  if (!(spec.theta1 > 0.0 && spec.theta1 <= spec.theta2 && spec.theta2 < kPi / 2))
    throw InvalidInput("gen_cone: need 0 < theta1 <= theta2 < pi/2");
  const double lo = std::tan(spec.theta1);
  const double hi = std::tan(spec.theta2);
  std::vector<double> s(static_cast<std::size_t>(spec.n));
  for (auto& v : s) v = -rng.uniform(lo, hi);
  s[0] = -hi;
  if (spec.n > 1) s[1] = -lo;
  const ComplexMatrix a = assemble(spec, rng, s);
  return spec.orientation == ConeOrientation::lower ? a : ComplexMatrix(a.adjoint());
}

ComplexMatrix gen_cone(const EnsembleSpec& spec) {
  Rng rng(spec.seed);
  return gen_cone(spec, rng);
}

ComplexMatrix gen_generic(const EnsembleSpec& spec, Rng& rng) {
  check_common(spec);
  ComplexMatrix g(spec.n, spec.n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.n));
  for (int j = 0; j < spec.n; ++j)
    for (int i = 0; i < spec.n; ++i) g(i, j) = scale * rng.complex_normal();
  return g;
}

std::vector<ComplexMatrix> generate(const EnsembleSpec& spec, Rng& rng) {
  if (spec.family_size < 1) throw InvalidInput("family_size must be >= 1");
  if (spec.kind == EnsembleKind::double_commuting) return gen_double_commuting(spec, rng);
  std::vector<ComplexMatrix> out;
  for (int k = 0; k < spec.family_size; ++k) {
    switch (spec.kind) {
      case EnsembleKind::sectorial: out.push_back(gen_sectorial(spec, rng)); break;
      case EnsembleKind::accretive_dissipative:
        out.push_back(gen_accretive_dissipative(spec, rng));
        break;
      case EnsembleKind::cone: out.push_back(gen_cone(spec, rng)); break;
      case EnsembleKind::generic: out.push_back(gen_generic(spec, rng)); break;
      case EnsembleKind::double_commuting: break;
    }
  }
  return out;
}

std::vector<ComplexMatrix> generate(const EnsembleSpec& spec) {
  Rng rng(spec.seed);
  return generate(spec, rng);
}

}  // namespace sectorial
