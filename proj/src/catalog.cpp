#include "sectorial/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "sectorial/bounded.hpp"
#include "sectorial/matfun.hpp"

namespace sectorial {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr double kGammaCutoff = 1e-6;
constexpr double kCommutingTolerance = 1e-8;
const double kSqrt8 = 2.0 * std::numbers::sqrt2;

double dim(const ComplexMatrix& m) { return static_cast<double>(m.rows()); }

// Frobenius bound on the rounding error of a computed product of k factors.
double product_error(std::initializer_list<const ComplexMatrix*> factors) {
  double prod = 1.0;
  double n = 0.0;
  for (const auto* f : factors) {
    prod *= f->norm();
    n = std::max(n, dim(*f));
  }
  return 2.0 * static_cast<double>(factors.size()) * n * kEps * prod;
}

// Function of an angle known to within an error, clamped to [0, pi/2).
template <typename F>
Bounded angle_fn(Bounded angle, F&& f) {
  const double top = std::nextafter(kPi / 2, 0.0);
  return monotone(angle, [&](double t) { return f(std::clamp(t, 0.0, top)); });
}

Bounded sin2(Bounded angle) {
  return angle_fn(angle, [](double t) { return std::sin(t) * std::sin(t); });
}

struct Sides {
  Bounded lhs;
  Bounded rhs;
};

// Measurements shared by the evaluators.
class Context {
 public:
  explicit Context(const InequalityInput& in) : in_(in) {}

  const InequalityInput& input() const { return in_; }

  const ComplexMatrix& a() const {
    if (in_.a.size() == 0) throw InvalidInput("operand A is missing");
    require_square(in_.a, "A");
    return in_.a;
  }
  const ComplexMatrix& b() const {
    if (in_.b.size() == 0) throw InvalidInput("operand B is missing");
    require_square(in_.b, "B");
    if (in_.b.rows() != in_.a.rows()) throw InvalidInput("A and B differ in size");
    return in_.b;
  }
  ComplexMatrix x_or_identity(const ComplexMatrix& m) const {
    if (m.size() == 0) return ComplexMatrix::Identity(in_.a.rows(), in_.a.rows());
    require_square(m, "X/Y");
    if (m.rows() != in_.a.rows()) throw InvalidInput("X/Y differ in size from A");
    return m;
  }

  // Family operands: family_a, or the A (and B) roles when it is empty.
  std::vector<ComplexMatrix> family() const {
    std::vector<ComplexMatrix> out = in_.family_a;
    if (out.empty()) {
      out.push_back(a());
      if (in_.b.size() != 0) out.push_back(b());
    }
    check_family(out);
    return out;
  }
  std::pair<std::vector<ComplexMatrix>, std::vector<ComplexMatrix>> paired_family() const {
    std::vector<ComplexMatrix> fa = in_.family_a;
    std::vector<ComplexMatrix> fb = in_.family_b;
    if (fa.empty() && fb.empty()) {
      fa.push_back(a());
      fb.push_back(b());
    }
    if (fa.size() != fb.size())
      throw InvalidInput("paired family needs as many B_i as A_i (" + std::to_string(fa.size()) +
                         " vs " + std::to_string(fb.size()) + ")");
    std::vector<ComplexMatrix> all = fa;
    all.insert(all.end(), fb.begin(), fb.end());
    check_family(all);
    return {fa, fb};
  }

  Bounded w(const ComplexMatrix& m, double matrix_error = 0.0) const {
    const auto r = numerical_radius(m, in_.tol * std::max(1.0, m.norm()));
    return {r.value, r.error_bound + matrix_error};
  }

  Bounded norm(const ComplexMatrix& m, double matrix_error = 0.0) const {
    return {operator_norm(m), 64.0 * dim(m) * kEps * m.norm() + matrix_error};
  }

  Bounded re_norm(const ComplexMatrix& m) const { return hermitian_norm(cartesian_parts(m).re); }
  Bounded im_norm(const ComplexMatrix& m) const { return hermitian_norm(cartesian_parts(m).im); }

  // ||M M^* + M^* M||.
  Bounded sym_norm(const ComplexMatrix& m) const {
    const ComplexMatrix s = m * m.adjoint() + m.adjoint() * m;
    return hermitian_norm(s, product_error({&m, &m}) * 2.0);
  }

  void require_sectorial(const std::vector<ComplexMatrix>& ops,
                         const std::string& predicate = "sectorial") const {
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const auto acc = is_accretive(ops[k], default_margin(ops[k]));
      if (!acc.flag)
        throw ApplicabilityError(predicate, "operand " + std::to_string(k + 1) +
                                                  " is not accretive (lambda_min(Re) = " +
                                                  std::to_string(acc.delta) + ")");
    }
  }

  void require_accretive_dissipative(const std::vector<ComplexMatrix>& ops) const {
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const double margin = default_margin(ops[k]);
      if (!is_accretive_dissipative(ops[k], margin))
        throw ApplicabilityError("accretive-dissipative",
                                 "operand " + std::to_string(k + 1) +
                                     " does not have Re and Im both positive definite");
    }
  }

  void require_double_commuting(const std::vector<ComplexMatrix>& set) const {
    const double r = double_commuting_residual(set);
    if (r > kCommutingTolerance)
      throw ApplicabilityError("double-commuting", "relative commutation residual " +
                                                       std::to_string(r) + " exceeds 1e-8");
  }

  // Common sectorial index of the operands: max of the minimal indices.
  Bounded gamma(const std::vector<ComplexMatrix>& ops, bool nonzero) const {
    require_sectorial(ops);
    Bounded g{0.0, 0.0};
    for (const auto& m : ops) {
      const SectorCone s = sectorial_index(m);
      g = max(g, Bounded{s.gamma, s.error});
    }
    if (in_.gamma) {
      if (in_.gamma->gamma + in_.gamma->error < g.value - g.error)
        throw ApplicabilityError("sectorial", "supplied gamma " +
                                                  std::to_string(in_.gamma->gamma) +
                                                  " is below the minimal index " +
                                                  std::to_string(g.value));
      g = Bounded{in_.gamma->gamma, in_.gamma->error};
    }
    if (nonzero && g.value < kGammaCutoff)
      throw ApplicabilityError("gamma-nonzero",
                               "sectorial index " + std::to_string(g.value) + " is below 1e-6");
    return g;
  }

  RayCone cone(const ComplexMatrix& m) const {
    const RayCone c = in_.cone ? *in_.cone : cone_fit(m);
    if (!c.confined)
      throw ApplicabilityError("cone", "W(A) meets both half-planes Im z > 0 and Im z < 0");
    if (!(c.theta2 < kPi / 2))
      throw ApplicabilityError("cone", "theta2 must lie below pi/2");
    return c;
  }

  // Union cone of two operands confined to the same side.
  RayCone shared_cone(const ComplexMatrix& m1, const ComplexMatrix& m2) const {
    if (in_.cone) return cone(m1);
    RayCone c1 = cone(m1);
    RayCone c2 = cone(m2);
    if (c1.both_orientations) c1.orientation = c2.orientation;
    if (c2.both_orientations) c2.orientation = c1.orientation;
    if (c1.orientation != c2.orientation)
      throw ApplicabilityError("cone", "A and B are confined to opposite half-planes");
    RayCone c = c1;
    c.theta1 = std::min(c1.theta1, c2.theta1);
    c.theta2 = std::max(c1.theta2, c2.theta2);
    c.error = std::max(c1.error, c2.error);
    return c;
  }

  // Principal square root with an error bound on the matrix.
  std::pair<ComplexMatrix, double> sqrt_of(const ComplexMatrix& m) const {
    auto r = sqrt_db(m);
    return {r.matrix, r.last_step + 64.0 * dim(m) * kEps * r.matrix.norm()};
  }

  // A^{1/2^n}. An error E in X perturbs X^{1/2} by at most
  // ||E|| / (2 lambda_min(Re X^{1/2})) (Sylvester equation S E' + E' S = E).
  std::pair<ComplexMatrix, double> root_chain(const ComplexMatrix& m, int n) const {
    if (n < 1 || n > 6) throw InvalidInput("number of halvings must be in [1, 6]");
    ComplexMatrix x = m;
    double err = 0.0;
    for (int k = 0; k < n; ++k) {
      auto [s, step] = sqrt_of(x);
      const double delta = is_accretive(s, 0.0).delta;
      err = step + (err > 0.0 ? err / (2.0 * delta) : 0.0);
      x = std::move(s);
    }
    return {x, err};
  }

  std::pair<ComplexMatrix, double> power_of(const ComplexMatrix& m, double t) const {
    const auto r = fractional_power(m, t);
    return {r.matrix, r.quadrature_error + 64.0 * dim(m) * kEps * r.matrix.norm()};
  }

 private:
  Bounded hermitian_norm(const ComplexMatrix& h, double matrix_error = 0.0) const {
    const auto eig = hermitian_eig<double>(h);
    const double v = std::max(std::abs(eig.min()), std::abs(eig.max()));
    return {v, 64.0 * dim(h) * kEps * h.norm() + matrix_error};
  }

  void check_family(const std::vector<ComplexMatrix>& fam) const {
    if (fam.empty()) throw InvalidInput("family is empty");
    for (std::size_t k = 0; k < fam.size(); ++k) {
      require_square(fam[k], "family member");
      if (fam[k].rows() != fam[0].rows())
        throw InvalidInput("family member " + std::to_string(k + 1) + " differs in size");
    }
  }

  const InequalityInput& in_;
};

using Evaluator = std::function<Sides(const Context&)>;

struct Entry {
  BoundSpec spec;
  Evaluator eval;
};

// ---------------------------------------------------------------------------
// Single-matrix bounds

Sides eq_1_2_cos(const Context& c) {
  const auto& a = c.a();
  const Bounded g = c.gamma({a}, false);
  const Bounded cosg = angle_fn(g, [](double t) { return std::cos(t); });
  return {c.w(a), cosg * c.norm(a)};
}

Sides lem_2_1_im(const Context& c) {
  const auto& a = c.a();
  const Bounded g = c.gamma({a}, false);
  const Bounded sing = angle_fn(g, [](double t) { return std::sin(t); });
  return {c.im_norm(a), sing * c.w(a)};
}

Sides thm_2_2(const Context& c) {
  const auto& a = c.a();
  const Bounded g = c.gamma({a}, true);
  const Bounded csc2 = angle_fn(g, [](double t) { return 1.0 / (std::sin(t) * std::sin(t)); });
  const Bounded rhs =
      csc2 * (c.sym_norm(a) / 4.0 + (square(c.im_norm(a)) - square(c.re_norm(a))) / 2.0);
  return {square(c.w(a)), rhs};
}

Sides base_quarter(const Context& c) {
  const auto& a = c.a();
  return {square(c.w(a)), c.sym_norm(a) / 4.0};
}

Sides base_refined(const Context& c) {
  const auto& a = c.a();
  const Bounded diff = abs(square(c.re_norm(a)) - square(c.im_norm(a)));
  return {square(c.w(a)), c.sym_norm(a) / 4.0 + diff / 2.0};
}

Sides lem_2_9(const Context& c, double k) {
  const auto& a = c.a();
  const Bounded g = c.gamma({a}, false);
  return {c.norm(a), sqrt(exact(1.0) + k * sin2(g)) * c.w(a)};
}

Sides cor_2_11(const Context& c, double k) {
  const auto& a = c.a();
  const Bounded g = c.gamma({a}, false);
  const auto [root, err] = c.sqrt_of(a);
  return {sqrt(c.w(a)), sqrt(exact(1.0) + k * sin2(g / 2.0)) * c.w(root, err)};
}

Sides thm_2_12(const Context& c, double k) {
  const auto& a = c.a();
  const int n = c.input().halvings;
  const Bounded g = c.gamma({a}, false);
  const auto [root, err] = c.root_chain(a, n);
  Bounded factor = exact(1.0);
  for (int i = 1; i <= n; ++i) {
    const Bounded base = exact(1.0) + k * sin2(g / std::ldexp(1.0, i));
    factor = factor * pow(base, std::ldexp(1.0, -(n + 1 - i)));
  }
  return {pow(c.w(a), std::ldexp(1.0, -n)), factor * c.w(root, err)};
}

Sides thm_3_1(const Context& c) {
  const auto& a = c.a();
  const RayCone cone = c.cone(a);
  const Bounded cos2 =
      angle_fn(Bounded{cone.theta1, cone.error}, [](double t) { return std::cos(t) * std::cos(t); });
  return {c.norm(a), sqrt(exact(1.0) + cos2) * c.w(a)};
}

Sides eq_3_2_rot(const Context& c) {
  const auto& a = c.a();
  const RayCone cone = c.cone(a);
  const Bounded half{(cone.theta2 - cone.theta1) / 2.0, cone.error};
  return {c.norm(a), sqrt(exact(1.0) + 2.0 * sin2(half)) * c.w(a)};
}

Sides lem_3_4(const Context& c) {
  const auto& a = c.a();
  const Bounded g = c.gamma({a}, true);
  const Bounded csc = angle_fn(g, [](double t) { return 1.0 / std::sin(t); });
  const Bounded rhs = csc / 2.0 * (c.norm(a) + c.im_norm(a) - c.re_norm(a));
  return {c.w(a), rhs};
}

Bounded gamma1_of(const RayCone& cone) {
  return Bounded{cone.gamma1(), cone.error};
}

Sides thm_3_5(const Context& c) {
  const auto& a = c.a();
  const Bounded csc1 = angle_fn(gamma1_of(c.cone(a)), [](double t) { return 1.0 / std::sin(t); });
  return {c.w(a), csc1 / 2.0 * (c.norm(a) + abs(c.im_norm(a) - c.re_norm(a)))};
}

Sides base_1p(const Context& c) {
  const auto& a = c.a();
  return {c.w(a), (c.norm(a) + abs(c.im_norm(a) - c.re_norm(a))) / 2.0};
}

Sides thm_3_7(const Context& c) {
  const auto& a = c.a();
  const Bounded csc2 = angle_fn(gamma1_of(c.cone(a)),
                                [](double t) { return 1.0 / (std::sin(t) * std::sin(t)); });
  const Bounded diff = abs(square(c.im_norm(a)) - square(c.re_norm(a)));
  return {square(c.w(a)), csc2 * (c.sym_norm(a) / 4.0 + diff / 2.0)};
}

Sides base_2p(const Context& c) {
  const auto& a = c.a();
  const Bounded diff = abs(square(c.im_norm(a)) - square(c.re_norm(a)));
  return {square(c.w(a)), c.sym_norm(a) / 4.0 + diff / 2.0};
}

// ---------------------------------------------------------------------------
// Commutators

// sin(g) * sqrt(w^2(A) - csc^2(g)/2 (||Im A||^2 - ||Re A||^2)), written as
// sqrt(sin^2(g) w^2(A) - (||Im A||^2 - ||Re A||^2)/2) to avoid amplifying the
// error of the bracket by csc^2.
Bounded sin_root_term(const Context& c, const ComplexMatrix& m, Bounded g) {
  const Bounded inner =
      sin2(g) * square(c.w(m)) - (square(c.im_norm(m)) - square(c.re_norm(m))) / 2.0;
  return sqrt(inner);
}

double sign_of(const Context& c) {
  const int s = c.input().sign;
  if (s != 1 && s != -1) throw InvalidInput("sign must be +1 or -1");
  return static_cast<double>(s);
}

Sides commutator_lhs_only(const Context& c, Bounded rhs) {
  const auto& a = c.a();
  const auto& b = c.b();
  const ComplexMatrix m = a * b + sign_of(c) * (b * a);
  return {c.w(m, 2.0 * product_error({&a, &b})), rhs};
}

Sides thm_2_4(const Context& c) {
  const auto& a = c.a();
  const auto& b = c.b();
  const ComplexMatrix x = c.x_or_identity(c.input().x);
  const ComplexMatrix y = c.x_or_identity(c.input().y);
  const Bounded g = c.gamma({a}, true);
  const ComplexMatrix m = a * x * b + sign_of(c) * (b * y * a);
  const Bounded lhs = c.w(m, product_error({&a, &x, &b}) + product_error({&b, &y, &a}));
  const Bounded rhs = kSqrt8 * c.norm(b) * max(c.norm(x), c.norm(y)) * sin_root_term(c, a, g);
  return {lhs, rhs};
}

Sides cor_2_5(const Context& c) {
  const auto& a = c.a();
  const Bounded g = c.gamma({a}, true);
  return commutator_lhs_only(c, kSqrt8 * c.norm(c.b()) * sin_root_term(c, a, g));
}

Sides cor_2_7(const Context& c) {
  const auto& a = c.a();
  const auto& b = c.b();
  const Bounded g = c.gamma({a, b}, true);
  const Bounded beta1 = kSqrt8 * c.norm(b) * sin_root_term(c, a, g);
  const Bounded beta2 = kSqrt8 * c.norm(a) * sin_root_term(c, b, g);
  return commutator_lhs_only(c, min(beta1, beta2));
}

Sides base_fong(const Context& c) {
  return commutator_lhs_only(c, kSqrt8 * c.norm(c.b()) * c.w(c.a()));
}

Sides base_kitt_comm(const Context& c) {
  const auto& a = c.a();
  const Bounded diff = abs(square(c.re_norm(a)) - square(c.im_norm(a)));
  return commutator_lhs_only(c, kSqrt8 * c.norm(c.b()) * sqrt(square(c.w(a)) - diff / 2.0));
}

// ---------------------------------------------------------------------------
// Families and pairs

ComplexMatrix sum_of(const std::vector<ComplexMatrix>& fam) {
  ComplexMatrix s = ComplexMatrix::Zero(fam[0].rows(), fam[0].cols());
  for (const auto& m : fam) s += m;
  return s;
}

double sum_error(const std::vector<ComplexMatrix>& fam) {
  double e = 0.0;
  for (const auto& m : fam) e += m.norm();
  return static_cast<double>(fam.size()) * kEps * e;
}

Sides prop_2_8(const Context& c) {
  const auto fam = c.family();
  c.require_sectorial(fam, "no-nonpositive-eigenvalues");
  Bounded rhs = exact(0.0);
  for (const auto& m : fam) {
    const auto [root, err] = c.sqrt_of(m);
    rhs = rhs + c.norm(root, err);
  }
  return {sqrt(c.norm(sum_of(fam), sum_error(fam))), rhs};
}

Sides cor_2_10(const Context& c, double k, bool ad) {
  const auto fam = c.family();
  if (ad) c.require_accretive_dissipative(fam);
  const Bounded g = c.gamma(fam, false);
  Bounded total = exact(0.0);
  for (const auto& m : fam) {
    const auto [root, err] = c.sqrt_of(m);
    total = total + c.w(root, err);
  }
  return {sqrt(c.w(sum_of(fam), sum_error(fam))),
          sqrt(exact(1.0) + k * sin2(g / 2.0)) * total};
}

double alpha_of(const Context& c) {
  const double alpha = c.input().alpha;
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  return alpha;
}

struct PairPowers {
  Bounded a_alpha, a_beta, b_alpha, b_beta;  // beta = 1 - alpha
};

template <typename Measure>
PairPowers pair_powers(const Context& c, double alpha, Measure&& measure) {
  const auto& a = c.a();
  const auto& b = c.b();
  const auto [aa, ea] = c.power_of(a, alpha);
  const auto [ab, eb] = c.power_of(a, 1.0 - alpha);
  const auto [ba, fa] = c.power_of(b, alpha);
  const auto [bb, fb] = c.power_of(b, 1.0 - alpha);
  return {measure(aa, ea), measure(ab, eb), measure(ba, fa), measure(bb, fb)};
}

Sides prop_2_13(const Context& c, bool second) {
  const double alpha = alpha_of(c);
  c.require_sectorial({c.a(), c.b()}, "no-nonpositive-eigenvalues");
  const auto p = pair_powers(c, alpha, [&](const ComplexMatrix& m, double e) { return c.norm(m, e); });
  const ComplexMatrix s = c.a() + c.b();
  const Bounded lhs = c.norm(s, kEps * (c.a().norm() + c.b().norm()));
  const Bounded rhs = second ? (p.a_alpha + p.b_beta) * (p.a_beta + p.b_alpha)
                             : (p.a_alpha + p.b_alpha) * (p.a_beta + p.b_beta);
  return {lhs, rhs};
}

Sides cor_2_14(const Context& c, bool second) {
  const double alpha = alpha_of(c);
  const Bounded g = c.gamma({c.a(), c.b()}, false);
  const auto p = pair_powers(c, alpha, [&](const ComplexMatrix& m, double e) { return c.w(m, e); });
  const Bounded k_alpha = sqrt(exact(1.0) + 2.0 * sin2(alpha * g));
  const Bounded k_beta = sqrt(exact(1.0) + 2.0 * sin2((1.0 - alpha) * g));
  const ComplexMatrix s = c.a() + c.b();
  const Bounded lhs = c.w(s, kEps * (c.a().norm() + c.b().norm()));
  const Bounded rhs =
      second ? (k_alpha * p.a_alpha + k_beta * p.b_beta) * (k_beta * p.a_beta + k_alpha * p.b_alpha)
             : k_alpha * k_beta * (p.a_alpha + p.b_alpha) * (p.a_beta + p.b_beta);
  return {lhs, rhs};
}

Bounded w_sum_products(const Context& c, const std::vector<ComplexMatrix>& fa,
                       const std::vector<ComplexMatrix>& fb) {
  ComplexMatrix s = ComplexMatrix::Zero(fa[0].rows(), fa[0].cols());
  double err = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    s += fa[i] * fb[i];
    err += product_error({&fa[i], &fb[i]}) + kEps * (fa[i] * fb[i]).norm();
  }
  return c.w(s, err);
}

std::vector<ComplexMatrix> concat(const std::vector<ComplexMatrix>& x,
                                  const std::vector<ComplexMatrix>& y) {
  std::vector<ComplexMatrix> all = x;
  all.insert(all.end(), y.begin(), y.end());
  return all;
}

Sides lem_2_15(const Context& c) {
  const auto [fa, fb] = c.paired_family();
  c.require_double_commuting(concat(fa, fb));
  auto gram = [&](const std::vector<ComplexMatrix>& fam) {
    ComplexMatrix s = ComplexMatrix::Zero(fam[0].rows(), fam[0].cols());
    double err = 0.0;
    for (const auto& m : fam) {
      s += m.adjoint() * m + m * m.adjoint();
      err += 2.0 * product_error({&m, &m});
    }
    return c.norm(s, err);
  };
  return {w_sum_products(c, fa, fb), sqrt(gram(fa)) * sqrt(gram(fb)) / 2.0};
}

Sides thm_2_16(const Context& c) {
  const auto [fa, fb] = c.paired_family();
  const auto all = concat(fa, fb);
  c.require_double_commuting(all);
  const Bounded g = c.gamma(all, false);
  Bounded sa = exact(0.0), sb = exact(0.0);
  for (const auto& m : fa) sa = sa + square(c.w(m));
  for (const auto& m : fb) sb = sb + square(c.w(m));
  return {w_sum_products(c, fa, fb), (exact(1.0) + sin2(g)) * sqrt(sa) * sqrt(sb)};
}

Sides product_bound(const Context& c, Bounded factor) {
  const auto& a = c.a();
  const auto& b = c.b();
  const ComplexMatrix ab = a * b;
  return {c.w(ab, product_error({&a, &b})), factor * c.w(a) * c.w(b)};
}

Sides cor_2_17(const Context& c) {
  c.require_double_commuting({c.a(), c.b()});
  const Bounded g = c.gamma({c.a(), c.b()}, false);
  return product_bound(c, exact(1.0) + sin2(g));
}

Sides lem_3_2(const Context& c, double k, bool ad) {
  if (ad) c.require_accretive_dissipative({c.a(), c.b()});
  const Bounded g = c.gamma({c.a(), c.b()}, false);
  return product_bound(c, exact(1.0) + k * sin2(g));
}

Sides thm_3_3(const Context& c) {
  const RayCone cone = c.shared_cone(c.a(), c.b());
  const Bounded cos2 =
      angle_fn(Bounded{cone.theta1, cone.error}, [](double t) { return std::cos(t) * std::cos(t); });
  return product_bound(c, exact(1.0) + cos2);
}

Sides eq_3_4_rot(const Context& c) {
  const RayCone cone = c.shared_cone(c.a(), c.b());
  const Bounded half{(cone.theta2 - cone.theta1) / 2.0, cone.error};
  return product_bound(c, exact(1.0) + 2.0 * sin2(half));
}

// ---------------------------------------------------------------------------
// Registry

using P = Predicate;
constexpr auto kLower = BoundSide::lower;
constexpr auto kUpper = BoundSide::upper;

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      // Single matrix.
      {{"eq-1.1-lower", kLower, Target::w, Arity::single, {}, false, "||A||/2 <= w(A)"},
       [](const Context& c) { return Sides{c.w(c.a()), c.norm(c.a()) / 2.0}; }},
      {{"eq-1.1-upper", kUpper, Target::w, Arity::single, {}, false, "w(A) <= ||A||"},
       [](const Context& c) { return Sides{c.w(c.a()), c.norm(c.a())}; }},
      {{"eq-1.2-cos", kLower, Target::w, Arity::single, {P::sectorial}, false,
        "cos(g) ||A|| <= w(A)"},
       eq_1_2_cos},
      {{"lem-2.1-im", kUpper, Target::im_norm, Arity::single, {P::sectorial}, false,
        "||Im A|| <= sin(g) w(A)"},
       lem_2_1_im},
      {{"thm-2.2", kLower, Target::w_squared, Arity::single, {P::sectorial, P::gamma_nonzero}, false,
        "w^2(A) >= csc^2(g)/4 ||AA*+A*A|| + csc^2(g)/2 (||Im A||^2 - ||Re A||^2)"},
       thm_2_2},
      {{"base-quarter", kLower, Target::w_squared, Arity::single, {}, false,
        "w^2(A) >= ||A*A+AA*||/4"},
       base_quarter},
      {{"base-refined", kLower, Target::w_squared, Arity::single, {}, false,
        "w^2(A) >= ||A*A+AA*||/4 + | ||Re A||^2 - ||Im A||^2 |/2"},
       base_refined},
      {{"lem-2.9", kUpper, Target::norm, Arity::single, {P::sectorial}, false,
        "||A|| <= sqrt(1+2 sin^2 g) w(A)"},
       [](const Context& c) { return lem_2_9(c, 2.0); }},
      {{"lem-2.9-ad", kUpper, Target::norm, Arity::single, {P::sectorial, P::accretive_dissipative},
        false, "||A|| <= sqrt(1+sin^2 g) w(A)"},
       [](const Context& c) {
         c.require_accretive_dissipative({c.a()});
         return lem_2_9(c, 1.0);
       }},
      {{"cor-2.11", kUpper, Target::w_root_power, Arity::single, {P::sectorial}, false,
        "w^{1/2}(A) <= sqrt(1+2 sin^2(g/2)) w(A^{1/2})"},
       [](const Context& c) { return cor_2_11(c, 2.0); }},
      {{"cor-2.11-ad", kUpper, Target::w_root_power, Arity::single,
        {P::sectorial, P::accretive_dissipative}, false,
        "w^{1/2}(A) <= sqrt(1+sin^2(g/2)) w(A^{1/2})"},
       [](const Context& c) {
         c.require_accretive_dissipative({c.a()});
         return cor_2_11(c, 1.0);
       }},
      {{"thm-2.12", kUpper, Target::w_root_power, Arity::single, {P::sectorial}, false,
        "w^{1/2^n}(A) <= prod_{i=1..n} (1+2 sin^2(g/2^i))^{1/2^{n+1-i}} w(A^{1/2^n})"},
       [](const Context& c) { return thm_2_12(c, 2.0); }},
      {{"thm-2.12-ad", kUpper, Target::w_root_power, Arity::single,
        {P::sectorial, P::accretive_dissipative}, false,
        "w^{1/2^n}(A) <= prod_{i=1..n} (1+sin^2(g/2^i))^{1/2^{n+1-i}} w(A^{1/2^n})"},
       [](const Context& c) {
         c.require_accretive_dissipative({c.a()});
         return thm_2_12(c, 1.0);
       }},
      {{"thm-3.1", kUpper, Target::norm, Arity::single, {P::cone}, false,
        "||A|| <= sqrt(1+cos^2(theta1)) w(A)"},
       thm_3_1},
      {{"eq-3.2-rot", kUpper, Target::norm, Arity::single, {P::cone}, false,
        "||A|| <= sqrt(1+2 sin^2((theta2-theta1)/2)) w(A)"},
       eq_3_2_rot},
      {{"lem-3.4", kLower, Target::w, Arity::single, {P::sectorial, P::gamma_nonzero}, false,
        "w(A) >= csc(g)/2 ||A|| + csc(g)/2 (||Im A|| - ||Re A||)"},
       lem_3_4},
      {{"thm-3.5", kLower, Target::w, Arity::single, {P::cone}, false,
        "w(A) >= csc(g1)/2 ||A|| + csc(g1)/2 | ||Im A|| - ||Re A|| |"},
       thm_3_5},
      {{"base-1p", kLower, Target::w, Arity::single, {}, false,
        "w(A) >= ||A||/2 + | ||Im A|| - ||Re A|| |/2"},
       base_1p},
      {{"thm-3.7", kLower, Target::w_squared, Arity::single, {P::cone}, false,
        "w^2(A) >= csc^2(g1)/4 ||AA*+A*A|| + csc^2(g1)/2 | ||Im A||^2 - ||Re A||^2 |"},
       thm_3_7},
      {{"base-2p", kLower, Target::w_squared, Arity::single, {}, false,
        "w^2(A) >= ||AA*+A*A||/4 + | ||Im A||^2 - ||Re A||^2 |/2"},
       base_2p},
      // Commutators.
      {{"thm-2.4", kUpper, Target::generalized_commutator, Arity::commutator,
        {P::sectorial, P::gamma_nonzero}, true,
        "w(AXB +- BYA) <= 2 sqrt(2) sin(g) ||B|| max(||X||,||Y||) "
        "sqrt(w^2(A) - csc^2(g)/2 (||Im A||^2 - ||Re A||^2))"},
       thm_2_4},
      {{"cor-2.5", kUpper, Target::commutator, Arity::commutator, {P::sectorial, P::gamma_nonzero},
        true, "w(AB +- BA) <= 2 sqrt(2) sin(g) ||B|| sqrt(w^2(A) - csc^2(g)/2 (||Im A||^2 - ||Re A||^2))"},
       cor_2_5},
      {{"cor-2.7", kUpper, Target::commutator, Arity::commutator, {P::sectorial, P::gamma_nonzero},
        true, "w(AB +- BA) <= min(beta1, beta2), beta2 = beta1 with A and B exchanged"},
       cor_2_7},
      {{"base-fong", kUpper, Target::commutator, Arity::commutator, {}, true,
        "w(AB +- BA) <= 2 sqrt(2) ||B|| w(A)"},
       base_fong},
      {{"base-kitt-comm", kUpper, Target::commutator, Arity::commutator, {}, true,
        "w(AB +- BA) <= 2 sqrt(2) ||B|| sqrt(w^2(A) - | ||Re A||^2 - ||Im A||^2 |/2)"},
       base_kitt_comm},
      // Families and pairs.
      {{"prop-2.8", kUpper, Target::norm_sum_root, Arity::family, {P::no_nonpositive_eigs}, false,
        "||sum A_i||^{1/2} <= sum ||A_i^{1/2}||"},
       prop_2_8},
      {{"cor-2.10", kUpper, Target::w_sum_root, Arity::family, {P::sectorial}, false,
        "w^{1/2}(sum A_i) <= sqrt(1+2 sin^2(g/2)) sum w(A_i^{1/2})"},
       [](const Context& c) { return cor_2_10(c, 2.0, false); }},
      {{"cor-2.10-ad", kUpper, Target::w_sum_root, Arity::family,
        {P::sectorial, P::accretive_dissipative}, false,
        "w^{1/2}(sum A_i) <= sqrt(1+sin^2(g/2)) sum w(A_i^{1/2})"},
       [](const Context& c) { return cor_2_10(c, 1.0, true); }},
      {{"prop-2.13-i", kUpper, Target::norm_sum, Arity::pair, {P::no_nonpositive_eigs}, false,
        "||A+B|| <= (||A^a||+||B^a||)(||A^{1-a}||+||B^{1-a}||)"},
       [](const Context& c) { return prop_2_13(c, false); }},
      {{"prop-2.13-ii", kUpper, Target::norm_sum, Arity::pair, {P::no_nonpositive_eigs}, false,
        "||A+B|| <= (||A^a||+||B^{1-a}||)(||A^{1-a}||+||B^a||)"},
       [](const Context& c) { return prop_2_13(c, true); }},
      {{"cor-2.14-i", kUpper, Target::w_sum, Arity::pair, {P::sectorial}, false,
        "w(A+B) <= sqrt(1+2 sin^2(a g)) sqrt(1+2 sin^2((1-a) g)) "
        "(w(A^a)+w(B^a))(w(A^{1-a})+w(B^{1-a}))"},
       [](const Context& c) { return cor_2_14(c, false); }},
      {{"cor-2.14-ii", kUpper, Target::w_sum, Arity::pair, {P::sectorial}, false,
        "w(A+B) <= (k_a w(A^a) + k_{1-a} w(B^{1-a}))(k_{1-a} w(A^{1-a}) + k_a w(B^a)), "
        "k_s = sqrt(1+2 sin^2(s g))"},
       [](const Context& c) { return cor_2_14(c, true); }},
      {{"lem-2.15", kUpper, Target::w_sum_products, Arity::paired_family, {P::double_commuting},
        false, "w(sum A_i B_i) <= 1/2 ||sum A_i*A_i + A_iA_i*||^{1/2} ||sum B_i*B_i + B_iB_i*||^{1/2}"},
       lem_2_15},
      {{"thm-2.16", kUpper, Target::w_sum_products, Arity::paired_family,
        {P::sectorial, P::double_commuting}, false,
        "w(sum A_i B_i) <= (1+sin^2 g) (sum w^2(A_i))^{1/2} (sum w^2(B_i))^{1/2}"},
       thm_2_16},
      {{"cor-2.17", kUpper, Target::w_sum_products, Arity::pair, {P::sectorial, P::double_commuting},
        false, "w(AB) <= (1+sin^2 g) w(A) w(B)"},
       cor_2_17},
      {{"lem-3.2", kUpper, Target::w_sum_products, Arity::pair, {P::sectorial}, false,
        "w(AB) <= (1+2 sin^2 g) w(A) w(B)"},
       [](const Context& c) { return lem_3_2(c, 2.0, false); }},
      {{"lem-3.2-ad", kUpper, Target::w_sum_products, Arity::pair,
        {P::sectorial, P::accretive_dissipative}, false, "w(AB) <= (1+sin^2 g) w(A) w(B)"},
       [](const Context& c) { return lem_3_2(c, 1.0, true); }},
      {{"thm-3.3", kUpper, Target::w_sum_products, Arity::pair, {P::cone}, false,
        "w(AB) <= (1+cos^2(theta1)) w(A) w(B)"},
       thm_3_3},
      {{"eq-3.4-rot", kUpper, Target::w_sum_products, Arity::pair, {P::cone}, false,
        "w(AB) <= (1+2 sin^2((theta2-theta1)/2)) w(A) w(B)"},
       eq_3_4_rot},
  };
  return entries;
}

const Entry& find_entry(const std::string& id) {
  for (const auto& e : registry())
    if (e.spec.id == id) return e;
  throw InvalidInput("unknown bound id '" + id + "'");
}

BoundEvaluation run(const Entry& entry, const InequalityInput& in) {
  const Context ctx(in);
  const Sides s = entry.eval(ctx);
  BoundEvaluation out;
  out.bound_id = entry.spec.id;
  out.sign = entry.spec.signed_pair ? in.sign : 0;
  out.lhs = s.lhs.value;
  out.rhs = s.rhs.value;
  out.slack = entry.spec.side == BoundSide::upper ? out.rhs - out.lhs : out.lhs - out.rhs;
  const double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.relative_slack = scale > 0.0 ? out.slack / scale : 0.0;
  out.certified_error = s.lhs.error + s.rhs.error + 8.0 * kEps * (std::abs(out.lhs) + std::abs(out.rhs));
  out.holds = out.slack >= -out.certified_error;
  return out;
}

BoundEvaluation run_checked(const std::string& id, const InequalityInput& in,
                            std::initializer_list<Arity> arities, const char* what) {
  const Entry& e = find_entry(id);
  if (std::find(arities.begin(), arities.end(), e.spec.arity) == arities.end())
    throw InvalidInput("bound '" + id + "' is not a " + what + " bound");
  return run(e, in);
}

}  // namespace

const std::vector<BoundSpec>& list_catalog() {
  static const std::vector<BoundSpec> specs = [] {
    std::vector<BoundSpec> out;
    for (const auto& e : registry()) out.push_back(e.spec);
    return out;
  }();
  return specs;
}

const BoundSpec& find_bound(const std::string& id) { return find_entry(id).spec; }

BoundEvaluation evaluate_single(const std::string& id, const InequalityInput& in) {
  return run_checked(id, in, {Arity::single}, "single-matrix");
}

BoundEvaluation evaluate_commutator(const std::string& id, const InequalityInput& in) {
  return run_checked(id, in, {Arity::commutator}, "commutator");
}

BoundEvaluation evaluate_family(const std::string& id, const InequalityInput& in) {
  return run_checked(id, in, {Arity::pair, Arity::family, Arity::paired_family}, "family");
}

BoundEvaluation evaluate(const std::string& id, const InequalityInput& in) {
  return run(find_entry(id), in);
}

double double_commuting_residual(const std::vector<ComplexMatrix>& set) {
  double worst = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const double scale = operator_norm(set[i]) * operator_norm(set[j]);
      if (scale == 0.0) continue;
      const ComplexMatrix c1 = set[i] * set[j] - set[j] * set[i];
      const ComplexMatrix c2 = set[i] * set[j].adjoint() - set[j].adjoint() * set[i];
      worst = std::max(worst, std::max(c1.norm(), c2.norm()) / scale);
    }
  return worst;
}

std::string to_string(BoundSide side) {
  return side == BoundSide::lower ? "lower-bound-on-target" : "upper-bound-on-target";
}

std::string to_string(Target target) {
  switch (target) {
    case Target::w: return "w(A)";
    case Target::w_squared: return "w^2(A)";
    case Target::norm: return "||A||";
    case Target::im_norm: return "||Im A||";
    case Target::norm_sum: return "||A+B||";
    case Target::commutator: return "w(AB+-BA)";
    case Target::generalized_commutator: return "w(AXB+-BYA)";
    case Target::w_sum_products: return "w(sum A_i B_i)";
    case Target::w_sum: return "w(A+B)";
    case Target::w_root_power: return "w^{1/2^n}(A)";
    case Target::norm_sum_root: return "||sum A_i||^{1/2}";
    case Target::w_sum_root: return "w^{1/2}(sum A_i)";
  }
  return "?";
}

std::string to_string(Arity arity) {
  switch (arity) {
    case Arity::single: return "A";
    case Arity::commutator: return "A,B[,X,Y]";
    case Arity::pair: return "A,B";
    case Arity::family: return "A_1..A_n";
    case Arity::paired_family: return "A_1..A_n,B_1..B_n";
  }
  return "?";
}

std::string to_string(Predicate predicate) {
  switch (predicate) {
    case Predicate::sectorial: return "sectorial";
    case Predicate::gamma_nonzero: return "gamma-nonzero";
    case Predicate::accretive_dissipative: return "accretive-dissipative";
    case Predicate::double_commuting: return "double-commuting";
    case Predicate::cone: return "cone";
    case Predicate::no_nonpositive_eigs: return "no-nonpositive-eigenvalues";
  }
  return "?";
}

}  // namespace sectorial
