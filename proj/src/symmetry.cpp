#include "toda/symmetry.hpp"

#include <stdexcept>

#include "toda/toda_core.hpp"

namespace toda {

LatticeSize SymmetryCandidate::lattice() const {
  const LatticeSize size = tau.size();
  if (psi.size() != static_cast<std::size_t>(size.num_b()) ||
      phi.size() != static_cast<std::size_t>(size.num_a()))
    throw std::invalid_argument("candidate needs N-1 phi and N psi components");
  for (const auto& p : phi)
    if (!(p.size() == size)) throw std::invalid_argument("candidate universe mismatch");
  for (const auto& p : psi)
    if (!(p.size() == size)) throw std::invalid_argument("candidate universe mismatch");
  return size;
}

SymmetryCandidate SymmetryCandidate::evolutionary(const VectorField& v) {
  const LatticeSize size = v.size();
  SymmetryCandidate c{Polynomial(size), {}, {}};
  for (int i = 1; i <= size.num_a(); ++i) c.phi.push_back(v.a(i));
  for (int i = 1; i <= size.num_b(); ++i) c.psi.push_back(v.b(i));
  return c;
}

VectorField SymmetryCandidate::field() const {
  const LatticeSize size = lattice();
  std::vector<Polynomial> comps(phi);
  comps.insert(comps.end(), psi.begin(), psi.end());
  return VectorField(size, std::move(comps));
}

SymmetryCandidate operator+(const SymmetryCandidate& x, const SymmetryCandidate& y) {
  x.lattice();
  y.lattice();
  SymmetryCandidate r{x.tau + y.tau, {}, {}};
  for (std::size_t i = 0; i < x.phi.size(); ++i) r.phi.push_back(x.phi[i] + y.phi[i]);
  for (std::size_t i = 0; i < x.psi.size(); ++i) r.psi.push_back(x.psi[i] + y.psi[i]);
  return r;
}

bool DeterminingResidual::is_zero() const { return !first_nonzero().has_value(); }

std::optional<Witness> DeterminingResidual::first_nonzero() const {
  for (std::size_t j = 0; j < gamma.size(); ++j)
    if (!gamma[j].is_zero()) return Witness{"Gamma_" + std::to_string(j + 1), gamma[j]};
  for (std::size_t j = 0; j < delta.size(); ++j)
    if (!delta[j].is_zero()) return Witness{"Delta_" + std::to_string(j + 1), delta[j]};
  return std::nullopt;
}

Polynomial total_derivative(const Polynomial& f) {
  return f.differentiate(Var::t()) + apply(toda_rhs(f.size()), f);
}

DeterminingResidual determining_residuals(const SymmetryCandidate& c) {
  const LatticeSize size = c.lattice();
  const int n = size.n();
  const VectorField rhs = toda_rhs(size);
  const auto dt = [&](const Polynomial& f) { return f.differentiate(Var::t()) + apply(rhs, f); };
  const auto a = [&](int i) { return a_var(size, i); };
  const auto b = [&](int i) { return b_var(size, i); };
  // phi_j with phi_0 = phi_N = 0, matching the boundary a_0 = a_N = 0.
  const auto phi = [&](int j) {
    return (j >= 1 && j <= n - 1) ? c.phi[static_cast<std::size_t>(j - 1)] : Polynomial(size);
  };
  const Polynomial tau_dot = dt(c.tau);

  DeterminingResidual r;
  for (int j = 1; j <= n - 1; ++j) {
    const Polynomial& psi_j = c.psi[static_cast<std::size_t>(j - 1)];
    const Polynomial& psi_j1 = c.psi[static_cast<std::size_t>(j)];
    r.gamma.push_back(dt(phi(j)) - tau_dot * a(j) * (b(j + 1) - b(j)) + phi(j) * (b(j) - b(j + 1)) +
                      a(j) * psi_j - a(j) * psi_j1);
  }
  for (int j = 1; j <= n; ++j) {
    const Polynomial& psi_j = c.psi[static_cast<std::size_t>(j - 1)];
    r.delta.push_back(dt(psi_j) - Rational(2) * tau_dot * (a(j).pow(2) - a(j - 1).pow(2)) -
                      Rational(4) * a(j) * phi(j) + Rational(4) * a(j - 1) * phi(j - 1));
  }
  return r;
}

SymmetryCandidate build_Y(int n, Hierarchy& h) {
  if (n < -1) throw std::invalid_argument("Y_n is defined for n >= -1");
  const VectorField y = h.X(n) + t_var(h.size()) * h.chi(n + 2);
  return SymmetryCandidate::evolutionary(y);
}

SymmetryCandidate build_Y(int n, LatticeSize size) {
  Hierarchy h(size);
  return build_Y(n, h);
}

VectorField evolution_defect(const VectorField& y, const VectorField& chi2) {
  return y.time_derivative() + lie_bracket(chi2, y);
}

std::vector<TheoremCase> verify_theorem(int n_max, Hierarchy& h) {
  std::vector<TheoremCase> out;
  for (int n = -1; n <= n_max; ++n) {
    const SymmetryCandidate y = build_Y(n, h);
    TheoremCase tc;
    tc.n = n;
    const DeterminingResidual res = determining_residuals(y);
    tc.residuals_vanish = res.is_zero();
    const VectorField defect = evolution_defect(y.field(), h.chi(2));
    tc.evolution_vanishes = defect.is_zero();
    if (!tc.residuals_vanish) {
      tc.witness = res.first_nonzero();
    } else if (!tc.evolution_vanishes) {
      tc.witness = first_nonzero(defect);
    }
    out.push_back(std::move(tc));
  }
  return out;
}

std::vector<TheoremCase> verify_theorem(int n_max, LatticeSize size) {
  Hierarchy h(size);
  return verify_theorem(n_max, h);
}

std::vector<BracketCase> bracket_relation_suite(Hierarchy& h, int n_min, int n_max, int l_max) {
  std::vector<BracketCase> out;
  for (int n = n_min; n <= n_max; ++n)
    for (int l = 1; l <= l_max; ++l) {
      // chi_{n+l} with n + l <= 0 only occurs as a zero multiple (l = 1).
      const VectorField lhs = lie_bracket(h.X(n), h.chi(l));
      const VectorField rhs =
          (n + l >= 1) ? h.chi(n + l) * Rational(l - 1) : VectorField(h.size());
      const VectorField diff = lhs - rhs;
      out.push_back({n, l, diff.is_zero(), first_nonzero(diff)});
    }
  return out;
}

std::vector<BracketCase> bracket_relation_suite(LatticeSize size) {
  Hierarchy h(size);
  return bracket_relation_suite(h, 0, 3, 4);
}

std::vector<KnownSymmetry> known_symmetries(LatticeSize size) {
  const int n = size.n();
  const Polynomial zero(size);
  const Polynomial one = Polynomial::constant(size, 1);
  const Polynomial minus_one = Polynomial::constant(size, -1);
  std::vector<KnownSymmetry> out;

  // b-translation.
  out.push_back({"b-shift", {zero, std::vector<Polynomial>(static_cast<std::size_t>(n - 1), zero),
                             std::vector<Polynomial>(static_cast<std::size_t>(n), one)}});
  // Time translation and its evolutionary representative.
  out.push_back({"time-translation",
                 {minus_one, std::vector<Polynomial>(static_cast<std::size_t>(n - 1), zero),
                  std::vector<Polynomial>(static_cast<std::size_t>(n), zero)}});
  out.push_back({"time-translation-evolutionary",
                 SymmetryCandidate::evolutionary(toda_rhs(size))});
  // Scaling (a, b, t) -> (s a, s b, t / s).
  SymmetryCandidate scaling{-t_var(size), {}, {}};
  for (int i = 1; i <= n - 1; ++i) scaling.phi.push_back(a_var(size, i));
  for (int i = 1; i <= n; ++i) scaling.psi.push_back(b_var(size, i));
  out.push_back({"scaling", scaling});
  out.push_back({"scaling-evolutionary",
                 SymmetryCandidate::evolutionary(master_X_explicit(0, size) +
                                                 t_var(size) * toda_rhs(size))});
  return out;
}

}  // namespace toda
