#pragma once

// Calculus of polynomial vector fields and bivectors on Flaschka phase
// space, and the Toda hierarchy built from it: the master symmetries X_n,
// the Hamiltonian fields chi_l and the Poisson tensors w_n.

#include <map>
#include <mutex>
#include <optional>

#include "toda/fields.hpp"
#include "toda/ratpoly.hpp"

namespace toda {

/// Directional derivative sum_k V^k df/dx^k over the phase coordinates
/// (d/dt is not included).
Polynomial apply(const VectorField& v, const Polynomial& f);

/// [V, W]^i = V(W^i) - W(V^i). Time-dependent components are fine: t is
/// treated as a parameter.
VectorField lie_bracket(const VectorField& v, const VectorField& w);

/// Components (w . grad H)^i = sum_j w^{ij} dH/dx^j.
VectorField hamiltonian_field(const PoissonTensor& w, const Polynomial& h);

/// {f, g}_w = grad f . w . grad g.
Polynomial poisson_bracket(const PoissonTensor& w, const Polynomial& f, const Polynomial& g);

/// Lie derivative of a bivector along an autonomous field:
///   (L_X w)^{ij} = X^k d_k w^{ij} - (d_k X^i) w^{kj} - (d_k X^j) w^{ik}.
/// Throws std::invalid_argument when X depends on t.
PoissonTensor lie_derivative_tensor(const VectorField& x, const PoissonTensor& w);

/// [w, w]^{ijk} = sum_l (w^{il} d_l w^{jk} + w^{jl} d_l w^{ki} + w^{kl} d_l w^{ij}).
/// Vanishes exactly iff w satisfies the Jacobi identity.
ThreeTensor schouten_self(const PoissonTensor& w);

/// The linear Toda bracket: {a_i, b_i} = -a_i, {a_i, b_{i+1}} = a_i.
PoissonTensor linear_toda_tensor(LatticeSize size);

/// X_{-1}, X_0, X_1, X_2 from their closed forms.
VectorField master_X_explicit(int n, LatticeSize size);

/// The hierarchy of one lattice size with memoised H_n, X_n, chi_l and w_n.
///
/// X_n for n >= 3 is the representative (1/(n-2)) [X_1, X_{n-1}].
///
/// The Poisson tensors are raised with the sign convention under which the
/// Lenard relations w_n grad H_l = w_{n-1} grad H_{l+1} hold, i.e.
///   L_{X_k} w_m = -(k - m + 2) w_{k+m}
/// with lie_derivative_tensor as defined above. Concretely
///   w_2 = -1/2 L_{X_1} w_1,  w_3 = -L_{X_1} w_2,
/// and for n >= 4, w_n = -L_{X_{n-m}} w_m / (n - 2m + 2) with m = 2 for even
/// n and m = 3 for odd n (the divisor is then n-2 or n-4, never zero).
///
/// Accessors are thread-safe; returned references stay valid for the life of
/// the object.
class Hierarchy {
 public:
  explicit Hierarchy(LatticeSize size);
  /// Replaces the seeds X_1 and w_1; everything derived from them follows.
  Hierarchy(LatticeSize size, VectorField x1, PoissonTensor w1);

  Hierarchy(const Hierarchy&) = delete;
  Hierarchy& operator=(const Hierarchy&) = delete;

  LatticeSize size() const { return size_; }

  /// H_n, n >= 1.
  const Polynomial& H(int n);
  /// X_n, n >= -1.
  const VectorField& X(int n);
  /// Hamiltonian field of H_l with respect to w_1.
  const VectorField& chi(int l);
  /// Hamiltonian field of H_l with respect to w_n.
  const VectorField& chi(int l, int n);
  /// w_n, n >= 1.
  const PoissonTensor& w(int n);

 private:
  const VectorField& X_locked(int n);
  const PoissonTensor& w_locked(int n);
  const Polynomial& H_locked(int n);

  LatticeSize size_;
  std::recursive_mutex mu_;
  std::map<int, Polynomial> h_;
  std::map<int, VectorField> x_;
  std::map<std::pair<int, int>, VectorField> chi_;
  std::map<int, PoissonTensor> w_;
};

/// X_n for n >= -1 (fresh hierarchy). Throws std::invalid_argument for n < -1.
VectorField master_X(int n, LatticeSize size);

/// w_n for n >= 1 (fresh hierarchy).
PoissonTensor poisson_w(int n, LatticeSize size);

/// Returns k when V - W = k chi exactly (k = 0 means V == W), otherwise
/// nothing.
std::optional<Rational> equivalent_mod_field(const VectorField& v, const VectorField& w,
                                             const VectorField& chi);

/// Same, with chi = chi_level built from w_1 and H_level.
std::optional<Rational> equivalent_mod_chi(const VectorField& v, const VectorField& w, int level);

}  // namespace toda
