#include <doctest.h>

#include <cmath>
#include <vector>

#include "toda/geometry.hpp"
#include "toda/toda_core.hpp"

using namespace toda;

namespace {

const LatticeSize N2{2};
const LatticeSize N3{3};

Polynomial P(const char* s, LatticeSize size = N2) { return parse_polynomial(s, size); }

}  // namespace

TEST_CASE("flaschka") {
  const std::vector<double> zeros{0.0, 0.0, 0.0};
  const PhasePoint z = flaschka(zeros, zeros);
  CHECK(z.a == std::vector<double>{0.5, 0.5});
  CHECK(z.b == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(z.t == 0.0);

  const std::vector<double> q{0.3, -1.7};
  const std::vector<double> p{2.0, -2.0};
  CHECK(flaschka(q, p).b == std::vector<double>{-1.0, 1.0});

  const std::vector<double> q2{2.0 * std::log(2.0), 0.0};
  CHECK(flaschka(q2, std::vector<double>{0.0, 0.0}).a[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(flaschka(std::vector<double>{40.0, -40.0}, std::vector<double>{0.0, 0.0}).a[0] > 0.0);
}

TEST_CASE("phase point validation") {
  PhasePoint p{{1.0}, {0.0}, 0.0};
  CHECK_THROWS_AS(p.lattice(), std::invalid_argument);
  p.b.push_back(1.0);
  CHECK(p.lattice().n() == 2);
  CHECK(p.state() == std::vector<double>{1.0, 0.0, 1.0});
  p.a[0] = std::nan("");
  CHECK_FALSE(p.is_finite());
}

TEST_CASE("hamiltonians") {
  CHECK(hamiltonian(1, N3) == P("b1 + b2 + b3", N3));
  CHECK(hamiltonian(2, N2) == P("1/2*b1^2 + 1/2*b2^2 + a1^2"));
  CHECK(hamiltonian(3, N2) == P("1/3*(b1^3 + b2^3) + a1^2*(b1 + b2)"));
  for (int n = 1; n <= 6; ++n) {
    const Polynomial h = hamiltonian(n, N3);
    CHECK(h.is_homogeneous());
    CHECK(h.degree() == n);
  }
  CHECK_THROWS(hamiltonian(0, N2));
}

TEST_CASE("gradient") {
  const auto g1 = gradient(hamiltonian(1, N3));
  CHECK(g1[0].is_zero());
  CHECK(g1[1].is_zero());
  for (int k = 2; k < 5; ++k) CHECK(g1[static_cast<std::size_t>(k)] == Polynomial::constant(N3, 1));
  const auto g2 = gradient(hamiltonian(2, N2));
  CHECK(g2 == std::vector<Polynomial>{P("2*a1"), P("b1"), P("b2")});
  for (const auto& g : gradient(Polynomial::constant(N3, 7))) CHECK(g.is_zero());
}

TEST_CASE("toda_rhs") {
  const VectorField v = toda_rhs(N2);
  CHECK(v.a(1) == P("a1*b2 - a1*b1"));
  CHECK(v.b(1) == P("2*a1^2"));
  CHECK(v.b(2) == P("-2*a1^2"));
  CHECK(apply(toda_rhs(N3), hamiltonian(1, N3)).is_zero());
  // Conservation of all H_m.
  for (int n = 2; n <= 4; ++n) {
    const LatticeSize size(n);
    for (int m = 1; m <= 2 * n; ++m) CHECK(apply(toda_rhs(size), hamiltonian(m, size)).is_zero());
  }
}

TEST_CASE("Lax pair reproduces the flow") {
  for (int n = 2; n <= 6; ++n) {
    const LatticeSize size(n);
    CHECK(lax_commutator(size) == tridiagonal_of(toda_rhs(size)));
  }
  const PolyMatrix c = lax_commutator(N2);
  CHECK(c(0, 0) == P("2*a1^2"));
  CHECK(c(1, 1) == P("-2*a1^2"));
  CHECK(c(0, 1) == P("a1*b2 - a1*b1"));
}

TEST_CASE("numeric Lax matrices") {
  const PhasePoint z{{1.0}, {0.0, 0.0}, 0.0};
  const Eigen::MatrixXd b = lax_B(z);
  CHECK(b(0, 1) == 1.0);
  CHECK(b(1, 0) == -1.0);
  CHECK(b(0, 0) == 0.0);
  CHECK(lax_B(PhasePoint{{0.0, 0.0}, {1.0, 2.0, 3.0}, 0.0}).isZero());
  const PhasePoint w{{0.3, -0.2}, {0.5, 1.0, -0.7}, 0.0};
  const Eigen::MatrixXd l = lax_L(w);
  CHECK(l.isApprox(l.transpose()));
  CHECK(hamiltonian_value(w, 2) == doctest::Approx(0.5 * (0.25 + 1.0 + 0.49) + 0.09 + 0.04));
  std::map<Var, double> pt{{Var::a(1), 0.3}, {Var::a(2), -0.2}, {Var::b(1), 0.5}, {Var::b(2), 1.0},
                           {Var::b(3), -0.7}};
  for (int n = 1; n <= 5; ++n)
    CHECK(hamiltonian_value(w, n) == doctest::Approx(hamiltonian(n, N3).evaluate(pt)).epsilon(1e-13));
}

TEST_CASE("flow residuals") {
  const VectorField v = toda_rhs(N3);
  const std::vector<Polynomial> adot{v.a(1), v.a(2)};
  const std::vector<Polynomial> bdot{v.b(1), v.b(2), v.b(3)};
  const auto r = symbolic_residuals(N3, adot, bdot);
  for (const auto& g : r.gamma) CHECK(g.is_zero());
  for (const auto& d : r.delta) CHECK(d.is_zero());

  // Fixed point a = 0.
  const std::vector<double> a0{0.0, 0.0};
  const std::vector<double> b0{1.0, -2.0, 0.5};
  const std::vector<double> z2{0.0, 0.0};
  const std::vector<double> z3{0.0, 0.0, 0.0};
  const auto rf = residuals<double>(a0, b0, z2, z3);
  for (double g : rf.gamma) CHECK(g == 0.0);
  for (double d : rf.delta) CHECK(d == 0.0);

  // Perturbing adot_j by 1 moves Gamma_j by 1.
  std::vector<Polynomial> bumped = adot;
  bumped[1] += Polynomial::constant(N3, 1);
  const auto rb = symbolic_residuals(N3, bumped, bdot);
  CHECK(rb.gamma[0].is_zero());
  CHECK(rb.gamma[1] == Polynomial::constant(N3, 1));
}
