#include <doctest.h>

#include <random>

#include "support.hpp"
#include "toda/geometry.hpp"
#include "toda/toda_core.hpp"

using namespace toda;

namespace {

const LatticeSize N2{2};
const LatticeSize N3{3};

Polynomial P(const char* s, LatticeSize size = N2) { return parse_polynomial(s, size); }

VectorField F(LatticeSize size, std::vector<const char*> comps) {
  std::vector<Polynomial> ps;
  for (const char* c : comps) ps.push_back(parse_polynomial(c, size));
  return VectorField(size, std::move(ps));
}

}  // namespace

TEST_CASE("apply") {
  Hierarchy h(N3);
  CHECK(apply(h.X(-1), h.H(1)) == Polynomial::constant(N3, 3));
  CHECK(apply(h.X(0), h.H(2)) == h.H(2) * Rational(2));
  CHECK(apply(master_X(1, N2), hamiltonian(2, N2)) == P("3*a1^2*b1 + 3*a1^2*b2 + b1^3 + b2^3"));
  CHECK(apply(master_X(3, N3), hamiltonian(1, N3)) == hamiltonian(4, N3) * Rational(4));
}

TEST_CASE("lie_bracket") {
  Hierarchy h(N3);
  CHECK(lie_bracket(h.X(0), h.X(-1)) == h.X(-1) * Rational(-1));
  CHECK(lie_bracket(h.X(0), h.chi(2)) == h.chi(2));
  CHECK(lie_bracket(h.X(1), h.chi(2)) == h.chi(3));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const auto u = testing::random_field(N2, rng);
    const auto v = testing::random_field(N2, rng);
    const auto w = testing::random_field(N2, rng);
    const VectorField jac = lie_bracket(u, lie_bracket(v, w)) + lie_bracket(v, lie_bracket(w, u)) +
                            lie_bracket(w, lie_bracket(u, v));
    CHECK(jac.is_zero());
    CHECK(lie_bracket(u, v) == lie_bracket(v, u) * Rational(-1));
    // Bracket as a derivation commutator on functions.
    const auto f = testing::random_polynomial(N2, rng);
    CHECK(apply(lie_bracket(u, v), f) == apply(u, apply(v, f)) - apply(v, apply(u, f)));
  }
}

TEST_CASE("master fields") {
  const VectorField xm1 = master_X(-1, N3);
  CHECK(xm1.a(1).is_zero());
  CHECK(xm1.a(2).is_zero());
  for (int i = 1; i <= 3; ++i) CHECK(xm1.b(i) == Polynomial::constant(N3, 1));

  CHECK(master_X(1, N2) == F(N2, {"-a1*b1 + 3*a1*b2", "5*a1^2 + b1^2", "-3*a1^2 + b2^2"}));
  CHECK(master_X(0, N3) == F(N3, {"a1", "a2", "b1", "b2", "b3"}));

  Hierarchy h(N3);
  for (int n = -1; n <= 4; ++n) {
    CHECK(h.X(n).is_autonomous());
    CHECK(h.X(n).degree() == n + 1);
  }
  CHECK_THROWS_AS(master_X(-2, N2), std::invalid_argument);
  CHECK_THROWS_AS(master_X_explicit(3, N2), std::invalid_argument);
}

TEST_CASE("linear Poisson tensor") {
  const PoissonTensor w1 = poisson_w(1, N2);
  const int a1 = slot_of(N2, Var::a(1));
  const int b1 = slot_of(N2, Var::b(1));
  const int b2 = slot_of(N2, Var::b(2));
  CHECK(w1(a1, b1) == P("-a1"));
  CHECK(w1(a1, b2) == P("a1"));
  CHECK(w1(b1, a1) == P("a1"));
  CHECK(w1(b1, b2).is_zero());
  CHECK(w1.is_antisymmetric());
  for (int n = 2; n <= 5; ++n) {
    const LatticeSize size(n);
    const PoissonTensor w = linear_toda_tensor(size);
    CHECK(hamiltonian_field(w, hamiltonian(2, size)) == toda_rhs(size));
    CHECK(hamiltonian_field(w, hamiltonian(1, size)).is_zero());
    CHECK(schouten_self(w).is_zero());
  }
}

TEST_CASE("hierarchy regression anchors") {
  const PoissonTensor w2 = poisson_w(2, N2);
  CHECK(w2(slot_of(N2, Var::b(1)), slot_of(N2, Var::b(2))) == P("2*a1^2"));
  Hierarchy h(N3);
  CHECK(hamiltonian_field(h.w(2), h.H(1)) == h.chi(2));
  for (int n = 1; n <= 5; ++n) CHECK(h.w(n).is_antisymmetric());
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 4; ++m)
      for (int l = 1; l <= 4; ++l) CHECK(poisson_bracket(h.w(n), h.H(m), h.H(l)).is_zero());
  }
  CHECK_THROWS_AS(h.w(0), std::invalid_argument);
}

TEST_CASE("Lie derivative of bivectors") {
  Hierarchy h(N2);
  CHECK(lie_derivative_tensor(h.X(0), h.w(1)) == h.w(1) * Rational(-1));
  CHECK(lie_derivative_tensor(h.X(1), PoissonTensor(N2)).is_zero());
  CHECK(lie_derivative_tensor(h.X(1), h.w(1)) == h.w(2) * Rational(-2));
  CHECK(lie_derivative_tensor(h.X(2), h.w(1)) == h.w(3) * Rational(-3));
  CHECK_THROWS_AS(lie_derivative_tensor(P("t") * toda_rhs(N2), h.w(1)), std::invalid_argument);

  // Naturality: L_X {f, g} = {Xf, g} + {f, Xg} + (L_X w)(df, dg).
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = testing::random_field(N2, rng);
    const auto f = testing::random_polynomial(N2, rng);
    const auto g = testing::random_polynomial(N2, rng);
    const PoissonTensor& w = h.w(2);
    const Polynomial lhs = apply(x, poisson_bracket(w, f, g));
    const Polynomial rhs = poisson_bracket(w, apply(x, f), g) + poisson_bracket(w, f, apply(x, g)) +
                           poisson_bracket(lie_derivative_tensor(x, w), f, g);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Schouten self-bracket") {
  PoissonTensor c(N3);
  c.set(0, 3, Polynomial::constant(N3, 2));
  c.set(1, 4, Polynomial::constant(N3, -5));
  CHECK(schouten_self(c).is_zero());
  for (int n = 2; n <= 4; ++n) {
    Hierarchy h{LatticeSize(n)};
    for (int k = 1; k <= 3; ++k) CHECK(schouten_self(h.w(k)).is_zero());
  }
  // A 3d bivector with V = (w^23, w^31, w^12) is Poisson iff V . curl V = 0.
  PoissonTensor bad(N2);
  bad.set(0, 1, Polynomial::constant(N2, 1));
  bad.set(1, 2, P("b1"));
  const auto wit = schouten_self(bad).first_nonzero();
  REQUIRE(wit.has_value());
  CHECK_FALSE(wit->value.is_zero());
  CHECK(bad.is_antisymmetric());
}

TEST_CASE("equivalence modulo a Hamiltonian field") {
  Hierarchy h(N3);
  const VectorField& v = h.X(2);
  CHECK(equivalent_mod_chi(v, v, 3) == Rational(0));
  CHECK(equivalent_mod_chi(v + h.chi(3) * Rational(2), v, 3) == Rational(2));
  CHECK_FALSE(equivalent_mod_chi(v + h.chi(2), v, 3).has_value());
  CHECK_FALSE(equivalent_mod_chi(v + h.chi(3) + h.chi(2), v, 3).has_value());
  const auto k = equivalent_mod_chi(lie_bracket(h.X(1), h.X(2)), h.X(3), 4);
  REQUIRE(k.has_value());
  CHECK(*k == 0);
}

TEST_CASE("seeded hierarchy reacts to corrupted inputs") {
  VectorField x1 = master_X(1, N3);
  x1[slot_of(N3, Var::b(2))] += P("a1^2", N3);
  Hierarchy h(N3, x1, linear_toda_tensor(N3));
  CHECK_FALSE(apply(h.X(1), h.H(2)) == h.H(3) * Rational(3));
}
