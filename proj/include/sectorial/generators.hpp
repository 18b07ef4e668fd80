#pragma once

// Seeded random ensembles whose structural properties hold by construction.
//
// Every sample is A = P^{1/2} (I + iS) P^{1/2} with P Hermitian positive
// definite and S Hermitian, so Re A = P, Im A = P^{1/2} S P^{1/2} and the
// extreme arguments of W(A) are arctan of the extreme eigenvalues of S.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sectorial/fov.hpp"
#include "sectorial/linalg.hpp"

namespace sectorial {

enum class EnsembleKind { sectorial, accretive_dissipative, double_commuting, cone, generic };

std::string to_string(EnsembleKind kind);
/// Throws InvalidInput for unknown names.
EnsembleKind ensemble_kind_from_string(const std::string& name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::sectorial;
  int n = 4;
  int family_size = 1;
  double gamma = 0.5;  // sector half-angle for sectorial / accretive-dissipative / double-commuting
  double theta1 = 0.2;  // cone angles, 0 < theta1 <= theta2 < pi/2
  double theta2 = 0.6;
  ConeOrientation orientation = ConeOrientation::lower;
  double r_min = 0.5;  // spectrum of P (moduli for double-commuting families)
  double r_max = 2.0;
  std::uint64_t seed = 0;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the independent stream for sample `index` of a run seeded with `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Portable random source: mt19937_64 with explicitly defined uniform and
/// normal transforms, so streams agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  int uniform_int(int lo, int hi);       // [lo, hi]
  double normal();
  Complex complex_normal();  // E|z|^2 = 1

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) absorbed into Q.
ComplexMatrix random_unitary(int n, Rng& rng);
ComplexMatrix random_unitary(int n, std::uint64_t seed);

/// Minimal sectorial index exactly spec.gamma (0 <= gamma < pi/2).
ComplexMatrix gen_sectorial(const EnsembleSpec& spec, Rng& rng);
ComplexMatrix gen_sectorial(const EnsembleSpec& spec);

/// Re A and Im A positive definite, index exactly spec.gamma (0 < gamma < pi/2).
ComplexMatrix gen_accretive_dissipative(const EnsembleSpec& spec, Rng& rng);
ComplexMatrix gen_accretive_dissipative(const EnsembleSpec& spec);

/// family_size members A_i = U D_i U^* sharing one unitary U.
std::vector<ComplexMatrix> gen_double_commuting(const EnsembleSpec& spec, Rng& rng);
std::vector<ComplexMatrix> gen_double_commuting(const EnsembleSpec& spec);

/// W(A) in the cone of spec.orientation with arguments spanning [theta1, theta2].
ComplexMatrix gen_cone(const EnsembleSpec& spec, Rng& rng);
ComplexMatrix gen_cone(const EnsembleSpec& spec);

/// Complex Gaussian entries scaled by 1/sqrt(n).
ComplexMatrix gen_generic(const EnsembleSpec& spec, Rng& rng);

/// family_size samples of the spec's kind (one family for double-commuting).
std::vector<ComplexMatrix> generate(const EnsembleSpec& spec, Rng& rng);
std::vector<ComplexMatrix> generate(const EnsembleSpec& spec);

}  // namespace sectorial
