#pragma once

// Registry of numerical-radius inequalities for sectorial matrices and the
// classical bounds they refine. Each entry evaluates both sides on concrete
// matrices and reports the signed slack with a propagated error bound.

#include <optional>
#include <string>
#include <vector>

#include "sectorial/fov.hpp"
#include "sectorial/linalg.hpp"

namespace sectorial {

enum class BoundSide {
  lower,  // bound <= target
  upper,  // target <= bound
};

enum class Target {
  w,                      // w(A)
  w_squared,              // w^2(A)
  norm,                   // ||A||
  im_norm,                // ||Im A||
  norm_sum,               // ||A + B||
  commutator,             // w(AB +- BA)
  generalized_commutator, // w(AXB +- BYA)
  w_sum_products,         // w(sum A_i B_i), including w(AB)
  w_sum,                  // w(A + B)
  w_root_power,           // w^{1/2^n}(A)
  norm_sum_root,          // ||sum A_i||^{1/2}
  w_sum_root,             // w^{1/2}(sum A_i)
};

enum class Arity {
  single,          // A
  commutator,      // A, B (and X, Y)
  pair,            // A, B
  family,          // A_1..A_n
  paired_family,   // A_1..A_n, B_1..B_n
};

enum class Predicate {
  sectorial,              // every operand accretive, gamma = max of the minimal indices
  gamma_nonzero,          // gamma >= 1e-6 (csc gamma appears)
  accretive_dissipative,  // Re and Im both positive definite
  double_commuting,       // A_i A_j = A_j A_i and A_i A_j^* = A_j^* A_i over the whole set
  cone,                   // W in a cone {r e^{-+i theta}: theta1 <= theta <= theta2}, theta2 < pi/2
  no_nonpositive_eigs,    // certified through accretivity
};

struct BoundSpec {
  std::string id;
  BoundSide side = BoundSide::upper;
  Target target = Target::w;
  Arity arity = Arity::single;
  std::vector<Predicate> applicability;
  bool signed_pair = false;  // AB + BA and AB - BA are separate evaluations
  std::string formula;
};

struct BoundEvaluation {
  std::string bound_id;
  int sign = 0;  // +1 / -1 for commutator bounds, 0 otherwise
  double lhs = 0.0;  // the target quantity
  double rhs = 0.0;  // the bound
  double slack = 0.0;           // >= 0 means the inequality holds
  double relative_slack = 0.0;  // slack / max(|lhs|, |rhs|)
  double certified_error = 0.0;
  bool holds = false;           // slack >= -certified_error
};

struct InequalityInput {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix x;  // defaults to I when empty
  ComplexMatrix y;  // defaults to I when empty
  std::vector<ComplexMatrix> family_a;
  std::vector<ComplexMatrix> family_b;
  std::optional<SectorCone> gamma;  // overrides the computed index (must be valid)
  std::optional<RayCone> cone;      // overrides cone_fit
  double alpha = 0.5;
  int halvings = 1;
  int sign = +1;
  double tol = 1e-10;  // numerical-radius tolerance
};

const std::vector<BoundSpec>& list_catalog();

/// Throws InvalidInput for an unknown id.
const BoundSpec& find_bound(const std::string& id);

BoundEvaluation evaluate_single(const std::string& id, const InequalityInput& in);
BoundEvaluation evaluate_commutator(const std::string& id, const InequalityInput& in);
BoundEvaluation evaluate_family(const std::string& id, const InequalityInput& in);

/// Dispatches on the arity of the bound.
BoundEvaluation evaluate(const std::string& id, const InequalityInput& in);

/// Largest pairwise commutation residual of the set, each relative to
/// ||A_i|| ||A_j||; the double-commuting predicate accepts <= 1e-8.
double double_commuting_residual(const std::vector<ComplexMatrix>& set);

std::string to_string(BoundSide side);
std::string to_string(Target target);
std::string to_string(Arity arity);
std::string to_string(Predicate predicate);

}  // namespace sectorial
