#pragma once

// Lie point symmetries of the Toda equations through the first prolongation.
//
// A candidate v = tau d/dt + sum phi_j d/da_j + sum psi_j d/db_j is an
// infinitesimal symmetry iff, along solutions,
//   D_t phi_j - D_t(tau) a_j (b_{j+1} - b_j) + phi_j (b_j - b_{j+1})
//       + a_j psi_j - a_j psi_{j+1} = 0,
//   D_t psi_j - 2 D_t(tau) (a_j^2 - a_{j-1}^2) - 4 a_j phi_j
//       + 4 a_{j-1} phi_{j-1} = 0,
// where D_t substitutes the Toda right-hand side for the time derivatives.

#include <optional>
#include <string>
#include <vector>

#include "toda/fields.hpp"
#include "toda/geometry.hpp"
#include "toda/ratpoly.hpp"

namespace toda {

struct SymmetryCandidate {
  Polynomial tau;
  std::vector<Polynomial> phi;  // N-1 entries
  std::vector<Polynomial> psi;  // N entries

  /// Throws std::invalid_argument on inconsistent lengths or universes.
  LatticeSize lattice() const;

  /// The evolutionary candidate (tau = 0) with the components of v.
  static SymmetryCandidate evolutionary(const VectorField& v);
  /// (phi, psi) as a vector field; tau is ignored.
  VectorField field() const;

  friend SymmetryCandidate operator+(const SymmetryCandidate& x, const SymmetryCandidate& y);
};

struct DeterminingResidual {
  std::vector<Polynomial> gamma;  // N-1 entries
  std::vector<Polynomial> delta;  // N entries

  bool is_zero() const;
  /// First nonzero residual, named "Gamma_j" or "Delta_j".
  std::optional<Witness> first_nonzero() const;

  friend bool operator==(const DeterminingResidual&, const DeterminingResidual&) = default;
};

/// D_t f = df/dt + sum adot_j df/da_j + sum bdot_j df/db_j along the flow.
Polynomial total_derivative(const Polynomial& f);

DeterminingResidual determining_residuals(const SymmetryCandidate& c);

/// Y_n = X_n + t chi_{n+2} as an evolutionary candidate.
SymmetryCandidate build_Y(int n, LatticeSize size);
SymmetryCandidate build_Y(int n, Hierarchy& h);

/// dY/dt + [chi_2, Y]; vanishes iff the evolutionary field Y is a symmetry.
VectorField evolution_defect(const VectorField& y, const VectorField& chi2);

struct TheoremCase {
  int n = 0;
  bool residuals_vanish = false;
  bool evolution_vanishes = false;
  std::optional<Witness> witness;

  bool passed() const { return residuals_vanish && evolution_vanishes; }
};

/// Checks Y_n for n = -1 .. n_max by both routes.
std::vector<TheoremCase> verify_theorem(int n_max, Hierarchy& h);
std::vector<TheoremCase> verify_theorem(int n_max, LatticeSize size);

struct BracketCase {
  int n = 0;
  int l = 0;
  bool passed = false;
  std::optional<Witness> witness;
};

/// [X_n, chi_l] = (l-1) chi_{n+l} over n in [n_min, n_max], l in [1, l_max].
std::vector<BracketCase> bracket_relation_suite(Hierarchy& h, int n_min, int n_max, int l_max);
std::vector<BracketCase> bracket_relation_suite(LatticeSize size);

/// The closed-form solutions of the determining equations.
struct KnownSymmetry {
  std::string name;
  SymmetryCandidate candidate;
};

/// tau=0, phi=0, psi=1; tau=-1, phi=psi=0 and its evolutionary form chi_2;
/// the scaling tau=-t, phi=a, psi=b and its evolutionary form X_0 + t chi_2.
std::vector<KnownSymmetry> known_symmetries(LatticeSize size);

}  // namespace toda
