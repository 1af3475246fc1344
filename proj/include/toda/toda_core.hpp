#pragma once

// The finite non-periodic Toda lattice in Flaschka variables:
//   da_i/dt = a_i (b_{i+1} - b_i),   db_i/dt = 2 (a_i^2 - a_{i-1}^2),
// with the boundary convention a_0 = a_N = 0.

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "toda/fields.hpp"
#include "toda/ratpoly.hpp"

namespace toda {

/// A numeric state (a_1..a_{N-1}, b_1..b_N) at time t.
struct PhasePoint {
  std::vector<double> a;
  std::vector<double> b;
  double t = 0.0;

  /// Throws std::invalid_argument when |a| != |b| - 1 or |b| < 2.
  LatticeSize lattice() const;
  /// Concatenation a..., b... in slot order.
  std::vector<double> state() const;
  static PhasePoint from_state(LatticeSize size, std::span<const double> z, double t);
  bool is_finite() const;
};

/// Symmetric tridiagonal matrix with b on the diagonal and a off it.
struct JacobiMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  static JacobiMatrix from_point(const PhasePoint& p) { return {p.b, p.a}; }
  Eigen::MatrixXd dense() const;
};

/// a_i = exp((q_i - q_{i+1})/2) / 2,  b_i = -p_i / 2. Time is set to 0.
PhasePoint flaschka(std::span<const double> q, std::span<const double> p);

/// The Lax matrix L (dense) at a numeric point.
Eigen::MatrixXd lax_L(const PhasePoint& point);
/// The skew-symmetric partner B with B_{i,i+1} = a_i, B_{i+1,i} = -a_i.
Eigen::MatrixXd lax_B(const PhasePoint& point);

/// Numeric H_n = Tr(L^n)/n by repeated dense multiplication.
double hamiltonian_value(const PhasePoint& point, int n);

// ---------------------------------------------------------------------------
// Symbolic side

/// a_i as a polynomial; the zero polynomial outside 1..N-1.
Polynomial a_var(LatticeSize size, int i);
/// b_i as a polynomial; the zero polynomial outside 1..N. Out-of-range b's
/// only ever occur multiplied by a boundary a.
Polynomial b_var(LatticeSize size, int i);
Polynomial t_var(LatticeSize size);

/// Square matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix(LatticeSize size, int rows);

  int rows() const { return n_; }
  LatticeSize size() const { return size_; }
  const Polynomial& operator()(int i, int j) const {
    return e_[static_cast<std::size_t>(i * n_ + j)];
  }
  Polynomial& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * n_ + j)]; }

  Polynomial trace() const;
  friend PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y);
  friend PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y);
  friend bool operator==(const PolyMatrix& x, const PolyMatrix& y) = default;

 private:
  LatticeSize size_;
  int n_;
  std::vector<Polynomial> e_;
};

/// L with entries b_i on the diagonal and a_i off it.
PolyMatrix symbolic_lax(LatticeSize size);
PolyMatrix symbolic_lax_B(LatticeSize size);
/// [B, L] = BL - LB.
PolyMatrix lax_commutator(LatticeSize size);

/// H_n = Tr(L^n)/n, n >= 1.
Polynomial hamiltonian(int n, LatticeSize size);

/// (dH/da_1, ..., dH/da_{N-1}, dH/db_1, ..., dH/db_N).
std::vector<Polynomial> gradient(const Polynomial& h);

/// The Toda vector field.
VectorField toda_rhs(LatticeSize size);

/// Assembles a phase-space vector field into the tridiagonal matrix with the
/// b-components on the diagonal and the a-components off it.
PolyMatrix tridiagonal_of(const VectorField& v);

/// Flow residuals: Gamma_j = adot_j - a_j b_{j+1} + a_j b_j and
/// Delta_j = bdot_j - 2 a_j^2 + 2 a_{j-1}^2.
template <class T>
struct FlowResiduals {
  std::vector<T> gamma;
  std::vector<T> delta;
};

template <class T>
FlowResiduals<T> residuals(std::span<const T> a, std::span<const T> b, std::span<const T> adot,
                           std::span<const T> bdot) {
  const std::size_t n = b.size();
  FlowResiduals<T> r;
  r.gamma.reserve(a.size());
  r.delta.reserve(n);
  for (std::size_t j = 0; j < a.size(); ++j)
    r.gamma.push_back(adot[j] - a[j] * b[j + 1] + a[j] * b[j]);
  for (std::size_t j = 0; j < n; ++j) {
    T d = bdot[j];
    if (j < a.size()) {
      const T sq = a[j] * a[j];
      d = d - sq - sq;
    }
    if (j > 0) {
      const T sq = a[j - 1] * a[j - 1];
      d = d + sq + sq;
    }
    r.delta.push_back(std::move(d));
  }
  return r;
}

/// Symbolic residuals with the a- and b-coordinates as variables.
FlowResiduals<Polynomial> symbolic_residuals(LatticeSize size, std::span<const Polynomial> adot,
                                             std::span<const Polynomial> bdot);

}  // namespace toda
