#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "sectorial/errors.hpp"
#include "sectorial/fov.hpp"
#include "sectorial/matfun.hpp"
#include "test_util.hpp"

using namespace sectorial;
using namespace testutil;

namespace {

struct NormalSample {
  ComplexMatrix a;
  ComplexMatrix u;
  ComplexVector d;

  ComplexMatrix power(double t) const {
    ComplexVector dt(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) dt(i) = std::pow(d(i), t);
    return u * dt.asDiagonal() * u.adjoint();
  }
};

// Normal accretive matrix with eigenvalue arguments in [-gamma, gamma].
NormalSample normal_sectorial(int n, double gamma, Rng& rng) {
  NormalSample s;
  s.u = random_unitary(n, rng);
  s.d.resize(n);
  for (int i = 0; i < n; ++i) s.d(i) = std::polar(rng.uniform(0.2, 3.0), rng.uniform(-gamma, gamma));
  s.a = s.u * s.d.asDiagonal() * s.u.adjoint();
  return s;
}

ComplexMatrix sectorial_sample(int n, double gamma, Rng& rng) {
  EnsembleSpec spec;
  spec.n = n;
  spec.gamma = gamma;
  return gen_sectorial(spec, rng);
}

PowerOptions circle_opts() {
  PowerOptions o;
  o.route = PowerRoute::circle;
  return o;
}

}  // namespace

TEST_CASE("contour geometry") {
  SUBCASE("identity") {
    const ContourSpec c = contour_for(ComplexMatrix::Identity(3, 3));
    CHECK(c.center == doctest::Approx(2.0));
    CHECK(c.radius == doctest::Approx(0.5 * (2.0 + std::sqrt(3.0))));
    CHECK(c.nodes == 64);
    CHECK_FALSE(c.ill_conditioned);
  }
  SUBCASE("diag(4, 1)") {
    const ContourSpec c = contour_for(diag({4.0, 1.0}));
    CHECK(c.center == doctest::Approx(16.0));
    CHECK(c.radius == doctest::Approx(0.5 * (16.0 + std::sqrt(240.0))));
  }
  SUBCASE("non-accretive is a domain error") {
    CHECK_THROWS_AS(contour_for(diag({1.0, -1.0})), DomainError);
  }
  SUBCASE("circle encloses the spectrum and avoids the cut") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
      const ComplexMatrix a = sectorial_sample(2 + trial % 7, rng.uniform(0.0, 1.5), rng);
      const ContourSpec c = contour_for(a);
      CHECK(c.radius < c.center);
      Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
      for (Eigen::Index i = 0; i < a.rows(); ++i) CHECK(std::abs(es.eigenvalues()(i) - c.center) < c.radius);
    }
  }
  SUBCASE("ill-conditioned flag") {
    CHECK(contour_for(diag({1.0, 1e-8})).ill_conditioned);
  }
}

TEST_CASE("fractional power") {
  SUBCASE("diag(4, 1), t = 1/2 on both routes") {
    CHECK((fractional_power(diag({4.0, 1.0}), 0.5).matrix - diag({2.0, 1.0})).norm() <= 1e-9);
    CHECK((fractional_power(diag({4.0, 1.0}), 0.5, circle_opts()).matrix - diag({2.0, 1.0})).norm() <= 1e-9);
  }
  SUBCASE("identity to any power") {
    for (double t : {0.1, 0.37, 0.5, 0.9}) {
      const auto r = fractional_power(ComplexMatrix::Identity(4, 4), t);
      CHECK((r.matrix - ComplexMatrix::Identity(4, 4)).norm() <= 1e-12);
      CHECK(r.converged);
      CHECK(r.quadrature_error >= 0.0);
    }
  }
  SUBCASE("exponent outside (0, 1) is rejected") {
    CHECK_THROWS_AS(fractional_power(diag({1.0}), 0.0), InvalidInput);
    CHECK_THROWS_AS(fractional_power(diag({1.0}), 1.0), InvalidInput);
    CHECK_THROWS_AS(fractional_power(diag({1.0}), 1.5), InvalidInput);
  }
  SUBCASE("non-accretive is a domain error") {
    CHECK_THROWS_AS(fractional_power(diag({-1.0, 1.0}), 0.5), DomainError);
    CHECK_THROWS_AS(sqrt_db(diag({-1.0, 1.0})), DomainError);
  }
  SUBCASE("t = 0 and t = 1 at the chain level") {
    const ComplexMatrix a = remark_matrix();
    CHECK(principal_power(a, 0.0).matrix == ComplexMatrix(ComplexMatrix::Identity(2, 2)));
    CHECK(principal_power(a, 1.0).matrix == a);
  }
  SUBCASE("normal samples against the diagonal oracle") {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
      const auto s = normal_sectorial(2 + trial % 7, rng.uniform(0.0, 1.5), rng);
      for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        CHECK(rel_diff(fractional_power(s.a, t).matrix, s.power(t)) <= 1e-8);
        CHECK(rel_diff(fractional_power(s.a, t, circle_opts()).matrix, s.power(t)) <= 1e-8);
      }
    }
  }
  SUBCASE("extreme exponents against Eigen's matrix power") {
    Rng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
      const ComplexMatrix a = sectorial_sample(2 + trial % 7, rng.uniform(0.05, 1.4), rng);
      for (double t : {0.01, 0.05, 0.95, 0.99}) {
        const ComplexMatrix ref = a.pow(t);
        CHECK(rel_diff(fractional_power(a, t).matrix, ref) <= 1e-10);
      }
    }
  }
  SUBCASE("semigroup: A^{1/2} A^{1/2} = A") {
    Rng rng(44);
    for (int trial = 0; trial < 100; ++trial) {
      const ComplexMatrix a = sectorial_sample(2 + trial % 7, rng.uniform(0.0, 1.4), rng);
      const ComplexMatrix h = fractional_power(a, 0.5).matrix;
      CHECK(rel_diff(h * h, a) <= 1e-8);
      const ComplexMatrix p = fractional_power(a, 0.3).matrix;
      const ComplexMatrix q = fractional_power(a, 0.7).matrix;
      CHECK(rel_diff(p * q, a) <= 1e-8);
    }
  }
  SUBCASE("result is accretive and the sector shrinks") {
    Rng rng(45);
    for (int trial = 0; trial < 100; ++trial) {
      const double gamma = rng.uniform(0.05, 1.5);
      const ComplexMatrix a = sectorial_sample(2 + trial % 7, gamma, rng);
      const double g = sectorial_index(a).gamma;
      for (int k = 1; k <= 9; ++k) {
        const double t = 0.1 * k;
        const ComplexMatrix at = fractional_power(a, t).matrix;
        CHECK(is_accretive(at).flag);
        CHECK(sectorial_index(at).gamma <= t * g + 1e-6);
      }
    }
  }
  SUBCASE("quadrature converges geometrically until round-off") {
    Rng rng(46);
    for (auto route : {PowerRoute::branch_cut, PowerRoute::circle}) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto s = normal_sectorial(4, 1.0, rng);
        const double t = rng.uniform(0.1, 0.9);
        const ComplexMatrix ref = s.power(t);
        double previous = -1.0;
        for (int m = 128; m <= 2048; m *= 2) {
          PowerOptions o;
          o.route = route;
          o.relative_tolerance = 0.0;
          o.max_nodes = m;
          const double err = rel_diff(fractional_power(s.a, t, o).matrix, ref);
          if (previous >= 0.0 && previous > 1e-13) CHECK(err <= 0.5 * previous);
          if (previous >= 0.0) CHECK(err <= std::max(0.5 * previous, 1e-13));
          previous = err;
        }
      }
    }
  }
  SUBCASE("node budget exhaustion is reported, not hidden") {
    Rng rng(47);
    const ComplexMatrix a = sectorial_sample(4, 1.3, rng);
    PowerOptions o = circle_opts();
    o.max_nodes = 64;
    const auto r = fractional_power(a, 0.5, o);
    CHECK_FALSE(r.converged);
    CHECK(r.quadrature_error > 0.0);
  }
}

TEST_CASE("Denman-Beavers square root") {
  SUBCASE("diag(9, 4)") {
    CHECK((sqrt_db(diag({9.0, 4.0})).matrix - diag({3.0, 2.0})).norm() <= 1e-12);
  }
  SUBCASE("identity") {
    CHECK((sqrt_db(ComplexMatrix::Identity(3, 3)).matrix - ComplexMatrix::Identity(3, 3)).norm() <= 1e-14);
  }
  SUBCASE("multiply back on sectorial samples") {
    Rng rng(48);
    for (int trial = 0; trial < 100; ++trial) {
      const ComplexMatrix a = sectorial_sample(2 + trial % 7, rng.uniform(0.0, 1.45), rng);
      const ComplexMatrix x = sqrt_db(a).matrix;
      CHECK((x * x - a).norm() <= 1e-9 * a.norm());
    }
  }
  SUBCASE("agrees with the quadrature route") {
    Rng rng(49);
    for (int trial = 0; trial < 100; ++trial) {
      const ComplexMatrix a = sectorial_sample(2 + trial % 7, rng.uniform(0.0, 1.4), rng);
      CHECK(rel_diff(fractional_power(a, 0.5).matrix, sqrt_db(a).matrix) <= 1e-8);
    }
  }
}

TEST_CASE("power chain") {
  SUBCASE("diag(16), two halvings") {
    CHECK(std::abs(power_chain(diag({16.0}), 2).matrix(0, 0) - 2.0) <= 1e-12);
  }
  SUBCASE("identity") {
    for (int n = 1; n <= 6; ++n)
      CHECK((power_chain(ComplexMatrix::Identity(3, 3), n).matrix - ComplexMatrix::Identity(3, 3)).norm() <= 1e-13);
  }
  SUBCASE("halvings outside [1, 6] are rejected") {
    CHECK_THROWS_AS(power_chain(diag({2.0}), 0), InvalidInput);
    CHECK_THROWS_AS(power_chain(diag({2.0}), 7), InvalidInput);
  }
  SUBCASE("three halvings against A^{1/8}") {
    Rng rng(50);
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix a = sectorial_sample(2 + trial % 7, rng.uniform(0.0, 1.4), rng);
      const ComplexMatrix chain = power_chain(a, 3).matrix;
      const ComplexMatrix direct = fractional_power(a, 0.125).matrix;
      CHECK((chain - direct).norm() <= 1e-7 * std::max(1.0, direct.norm()));
    }
  }
}
