#pragma once

// Vector fields and bivectors on the (2N-1)-dimensional Flaschka phase
// space. Components follow the slot layout: a_1..a_{N-1}, then b_1..b_N.

#include <optional>
#include <string>
#include <vector>

#include "toda/ratpoly.hpp"

namespace toda {

/// Name of phase coordinate k (0-based), e.g. "a1" or "b3".
std::string coordinate_name(LatticeSize size, int k);

class VectorField {
 public:
  explicit VectorField(LatticeSize size);
  /// Throws std::invalid_argument unless there are exactly 2N-1 components,
  /// all in the same universe.
  VectorField(LatticeSize size, std::vector<Polynomial> components);

  LatticeSize size() const { return size_; }
  int dim() const { return size_.dim(); }

  const Polynomial& operator[](int k) const { return comps_[static_cast<std::size_t>(k)]; }
  Polynomial& operator[](int k) { return comps_[static_cast<std::size_t>(k)]; }
  /// Component along d/da_i, 1 <= i <= N-1.
  const Polynomial& a(int i) const { return comps_[static_cast<std::size_t>(i - 1)]; }
  /// Component along d/db_i, 1 <= i <= N.
  const Polynomial& b(int i) const {
    return comps_[static_cast<std::size_t>(size_.num_a() + i - 1)];
  }
  const std::vector<Polynomial>& components() const { return comps_; }

  bool is_zero() const;
  /// True iff no component involves t.
  bool is_autonomous() const;
  /// Componentwise d/dt.
  VectorField time_derivative() const;
  int degree() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(const Rational& c);
  friend VectorField operator+(VectorField x, const VectorField& y) { return x += y; }
  friend VectorField operator-(VectorField x, const VectorField& y) { return x -= y; }
  friend VectorField operator*(VectorField x, const Rational& c) { return x *= c; }
  friend VectorField operator*(const Rational& c, VectorField x) { return x *= c; }
  /// Multiplies every component by a polynomial (e.g. t).
  friend VectorField operator*(const Polynomial& f, const VectorField& x);
  friend bool operator==(const VectorField& x, const VectorField& y) = default;

 private:
  LatticeSize size_;
  std::vector<Polynomial> comps_;
};

/// Where two objects first differ, used for report witnesses.
struct Witness {
  std::string location;
  Polynomial value;

  std::string describe() const;
};

/// First nonzero component of v, if any.
std::optional<Witness> first_nonzero(const VectorField& v);

/// Contravariant antisymmetric 2-tensor stored as a dense (2N-1)^2 matrix.
class PoissonTensor {
 public:
  explicit PoissonTensor(LatticeSize size);

  /// Row-major (2N-1)^2 entries. Throws std::invalid_argument when the
  /// matrix is not exactly antisymmetric.
  static PoissonTensor from_matrix(LatticeSize size, std::vector<Polynomial> entries);

  LatticeSize size() const { return size_; }
  int dim() const { return size_.dim(); }

  const Polynomial& operator()(int i, int j) const {
    return m_[static_cast<std::size_t>(i * dim() + j)];
  }
  /// Sets w^{ij} = p and w^{ji} = -p.
  void set(int i, int j, const Polynomial& p);

  bool is_zero() const;
  bool is_antisymmetric() const;

  PoissonTensor& operator+=(const PoissonTensor& o);
  PoissonTensor& operator-=(const PoissonTensor& o);
  PoissonTensor& operator*=(const Rational& c);
  friend PoissonTensor operator+(PoissonTensor x, const PoissonTensor& y) { return x += y; }
  friend PoissonTensor operator-(PoissonTensor x, const PoissonTensor& y) { return x -= y; }
  friend PoissonTensor operator*(PoissonTensor x, const Rational& c) { return x *= c; }
  friend PoissonTensor operator*(const Rational& c, PoissonTensor x) { return x *= c; }
  friend bool operator==(const PoissonTensor& x, const PoissonTensor& y) = default;

 private:
  LatticeSize size_;
  std::vector<Polynomial> m_;
};

std::optional<Witness> first_nonzero(const PoissonTensor& w);

/// Totally antisymmetric 3-tensor, stored on i < j < k.
class ThreeTensor {
 public:
  explicit ThreeTensor(LatticeSize size);

  LatticeSize size() const { return size_; }
  /// Any index order; sign follows the permutation, repeated indices give 0.
  Polynomial at(int i, int j, int k) const;
  void set_sorted(int i, int j, int k, Polynomial p);

  bool is_zero() const;
  std::optional<Witness> first_nonzero() const;

 private:
  std::size_t index(int i, int j, int k) const;

  LatticeSize size_;
  std::vector<Polynomial> c_;
};

}  // namespace toda
