#pragma once

// Exact multivariate polynomials over the rationals in the Flaschka
// coordinates a_1..a_{N-1}, b_1..b_N and the time symbol t.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace toda {

using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q" into a canonical rational. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms; throws std::invalid_argument when den == 0.
Rational make_rational(long num, long den);

/// Always "num/den", e.g. "3/1", "-1/2".
std::string format_rational(const Rational& r);

/// Number of lattice sites N (N >= 2). The symbolic universe has N-1
/// a-variables, N b-variables and t.
class LatticeSize {
 public:
  static constexpr int kMaxSymbolic = 16;

  explicit LatticeSize(int n);

  int n() const { return n_; }
  int num_a() const { return n_ - 1; }
  int num_b() const { return n_; }
  /// Phase-space dimension 2N-1.
  int dim() const { return 2 * n_ - 1; }

  friend bool operator==(LatticeSize, LatticeSize) = default;

 private:
  int n_;
};

/// A coordinate symbol. Indices are 1-based; t carries index 0.
struct Var {
  enum class Kind : std::uint8_t { A, B, T };

  Kind kind = Kind::T;
  int index = 0;

  static Var a(int i) { return {Kind::A, i}; }
  static Var b(int i) { return {Kind::B, i}; }
  static Var t() { return {Kind::T, 0}; }

  /// "a3", "b1", "t".
  std::string name() const;
  /// Inverse of name(); throws std::invalid_argument.
  static Var parse(std::string_view name);

  friend auto operator<=>(const Var&, const Var&) = default;
};

/// Slot layout shared by every polynomial of a given lattice size:
/// a_i -> i-1, b_i -> N-2+i, t -> 2N-1. Phase coordinates occupy the
/// first dim() slots, which is also the component order of vector fields.
int slot_of(LatticeSize size, Var v);
Var var_of_slot(LatticeSize size, int slot);
/// Whether v names a variable of this universe.
bool in_universe(LatticeSize size, Var v);

/// Exponent vector over the slot layout. Zero exponents are implicit.
class Monomial {
 public:
  static constexpr int kSlots = 2 * LatticeSize::kMaxSymbolic;

  Monomial() = default;

  int exponent(int slot) const { return exps_[static_cast<std::size_t>(slot)]; }
  int degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  void set_exponent(int slot, int e);

  Monomial operator*(const Monomial& other) const;

  /// Graded lexicographic: total degree first, then exponents compared from
  /// the highest slot (t) down to a_1.
  friend std::strong_ordering operator<=>(const Monomial& x, const Monomial& y);
  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.exps_ == y.exps_;
  }

 private:
  std::array<std::uint8_t, kSlots> exps_{};
  int degree_ = 0;
};

class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  /// The zero polynomial.
  explicit Polynomial(LatticeSize size) : size_(size) {}

  static Polynomial constant(LatticeSize size, const Rational& c);
  static Polynomial variable(LatticeSize size, Var v);
  static Polynomial monomial(LatticeSize size, const Monomial& m, const Rational& c);

  LatticeSize size() const { return size_; }
  /// Terms in ascending canonical order, coefficients nonzero.
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  bool depends_on(Var v) const;
  /// Coefficient of m, zero if absent.
  Rational coefficient(const Monomial& m) const;

  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
  friend Polynomial operator-(Polynomial p);

  friend bool operator==(const Polynomial& p, const Polynomial& q);

  Polynomial pow(int e) const;

  /// Formal partial derivative. Throws std::invalid_argument when v is not
  /// a variable of this universe.
  Polynomial differentiate(Var v) const;
  /// Partial derivative by slot index; no range check beyond the universe.
  Polynomial differentiate_slot(int slot) const;

  /// Exact evaluation. Every variable that occurs in the polynomial must be
  /// assigned; otherwise std::out_of_range naming the variable.
  Rational evaluate(const std::map<Var, Rational>& point) const;
  double evaluate(const std::map<Var, double>& point) const;

  /// Human-readable form, e.g. "-a1*b1 + 3*a1*b2". Zero prints as "0".
  std::string to_string() const;

 private:
  void require_same_universe(const Polynomial& q) const;

  LatticeSize size_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Parses expressions such as "3*a1^2*b2 - (b1 + b2)^2/2 + t*a1". Supports
/// + - * / (by rational constants only), ^ with non-negative integer
/// exponents and parentheses. Throws std::invalid_argument.
Polynomial parse_polynomial(std::string_view text, LatticeSize size);

}  // namespace toda
