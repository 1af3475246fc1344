#include "toda/ratpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace toda {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  const auto check_int = [&](std::string_view part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw std::invalid_argument("malformed rational '" + s + "'");
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw std::invalid_argument("malformed rational '" + s + "'");
  };
  Rational r;
  if (slash == std::string::npos) {
    check_int(s);
    r = mpz_class(s[0] == '+' ? s.substr(1) : s);
  } else {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    mpz_class d(den[0] == '+' ? den.substr(1) : den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r = Rational(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
    r.canonicalize();
  }
  return r;
}

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

LatticeSize::LatticeSize(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("lattice size must be >= 2, got " + std::to_string(n));
}

std::string Var::name() const {
  switch (kind) {
    case Kind::A: return "a" + std::to_string(index);
    case Kind::B: return "b" + std::to_string(index);
    case Kind::T: return "t";
  }
  return "?";
}

Var Var::parse(std::string_view name) {
  if (name == "t") return Var::t();
  if (name.size() < 2 || (name[0] != 'a' && name[0] != 'b'))
    throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  int idx = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i])) || (i == 1 && name[i] == '0'))
      throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
    idx = idx * 10 + (name[i] - '0');
    if (idx > 1000) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  }
  return name[0] == 'a' ? Var::a(idx) : Var::b(idx);
}

bool in_universe(LatticeSize size, Var v) {
  switch (v.kind) {
    case Var::Kind::A: return v.index >= 1 && v.index <= size.num_a();
    case Var::Kind::B: return v.index >= 1 && v.index <= size.num_b();
    case Var::Kind::T: return true;
  }
  return false;
}

int slot_of(LatticeSize size, Var v) {
  if (size.n() > LatticeSize::kMaxSymbolic)
    throw std::invalid_argument("symbolic lattice size limited to " +
                                std::to_string(LatticeSize::kMaxSymbolic));
  if (!in_universe(size, v))
    throw std::invalid_argument("variable " + v.name() + " not in universe N=" +
                                std::to_string(size.n()));
  switch (v.kind) {
    case Var::Kind::A: return v.index - 1;
    case Var::Kind::B: return size.num_a() + v.index - 1;
    case Var::Kind::T: return size.dim();
  }
  return -1;
}

Var var_of_slot(LatticeSize size, int slot) {
  if (slot < 0 || slot > size.dim()) throw std::out_of_range("slot out of range");
  if (slot < size.num_a()) return Var::a(slot + 1);
  if (slot < size.dim()) return Var::b(slot - size.num_a() + 1);
  return Var::t();
}

// ---------------------------------------------------------------------------

void Monomial::set_exponent(int slot, int e) {
  if (e < 0 || e > 255) throw std::overflow_error("monomial exponent out of range");
  auto& x = exps_[static_cast<std::size_t>(slot)];
  degree_ += e - x;
  x = static_cast<std::uint8_t>(e);
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    const int e = exps_[i] + other.exps_[i];
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    r.exps_[i] = static_cast<std::uint8_t>(e);
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

std::strong_ordering operator<=>(const Monomial& x, const Monomial& y) {
  if (auto c = x.degree_ <=> y.degree_; c != 0) return c;
  for (std::size_t i = x.exps_.size(); i-- > 0;) {
    if (x.exps_[i] != y.exps_[i]) return x.exps_[i] <=> y.exps_[i];
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(LatticeSize size, const Rational& c) {
  Polynomial p(size);
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(LatticeSize size, Var v) {
  Monomial m;
  m.set_exponent(slot_of(size, v), 1);
  return monomial(size, m, 1);
}

Polynomial Polynomial::monomial(LatticeSize size, const Monomial& m, const Rational& c) {
  Polynomial p(size);
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : terms_.back().mono.degree();
}

bool Polynomial::is_homogeneous() const {
  return terms_.empty() || terms_.front().mono.degree() == terms_.back().mono.degree();
}

bool Polynomial::depends_on(Var v) const {
  if (!in_universe(size_, v)) return false;
  const int s = slot_of(size_, v);
  return std::any_of(terms_.begin(), terms_.end(),
                     [s](const Term& t) { return t.mono.exponent(s) > 0; });
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.mono < key; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

void Polynomial::require_same_universe(const Polynomial& q) const {
  if (!(size_ == q.size_))
    throw std::invalid_argument("polynomial universe mismatch: N=" + std::to_string(size_.n()) +
                                " vs N=" + std::to_string(q.size_.n()));
}

namespace {

// Merge two sorted term lists, sign = +1 or -1 applied to the second.
std::vector<Polynomial::Term> merge_terms(const std::vector<Polynomial::Term>& x,
                                          const std::vector<Polynomial::Term>& y, int sign) {
  std::vector<Polynomial::Term> out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    const auto c = i->mono <=> j->mono;
    if (c < 0) {
      out.push_back(*i++);
    } else if (c > 0) {
      out.push_back({j->mono, sign > 0 ? Rational(j->coeff) : Rational(-j->coeff)});
      ++j;
    } else {
      Rational s = sign > 0 ? Rational(i->coeff + j->coeff) : Rational(i->coeff - j->coeff);
      if (s != 0) out.push_back({i->mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i != x.end(); ++i) out.push_back(*i);
  for (; j != y.end(); ++j)
    out.push_back({j->mono, sign > 0 ? Rational(j->coeff) : Rational(-j->coeff)});
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  require_same_universe(q);
  if (q.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = q.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, q.terms_, +1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  require_same_universe(q);
  if (q.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, q.terms_, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  p.require_same_universe(q);
  Polynomial r(p.size_);
  if (p.terms_.empty() || q.terms_.empty()) return r;
  if (q.terms_.size() == 1 || p.terms_.size() == 1) {
    // Multiplication by a single term preserves the monomial order.
    const auto& single = q.terms_.size() == 1 ? q.terms_.front() : p.terms_.front();
    const auto& other = q.terms_.size() == 1 ? p.terms_ : q.terms_;
    r.terms_.reserve(other.size());
    for (const auto& t : other) r.terms_.push_back({t.mono * single.mono, t.coeff * single.coeff});
    return r;
  }
  std::vector<Polynomial::Term> prods;
  prods.reserve(p.terms_.size() * q.terms_.size());
  for (const auto& x : p.terms_)
    for (const auto& y : q.terms_) prods.push_back({x.mono * y.mono, x.coeff * y.coeff});
  std::sort(prods.begin(), prods.end(),
            [](const Polynomial::Term& x, const Polynomial::Term& y) { return x.mono < y.mono; });
  for (auto& t : prods) {
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff += t.coeff;
    } else {
      if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
      r.terms_.push_back(std::move(t));
    }
  }
  if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
  return r;
}

Polynomial operator-(Polynomial p) {
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

bool operator==(const Polynomial& p, const Polynomial& q) {
  if (!(p.size_ == q.size_) || p.terms_.size() != q.terms_.size()) return false;
  for (std::size_t i = 0; i < p.terms_.size(); ++i) {
    if (!(p.terms_[i].mono == q.terms_[i].mono) || p.terms_[i].coeff != q.terms_[i].coeff)
      return false;
  }
  return true;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial result = constant(size_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::differentiate(Var v) const {
  return differentiate_slot(slot_of(size_, v));
}

Polynomial Polynomial::differentiate_slot(int slot) const {
  // Lowering one exponent in every surviving term keeps grlex order.
  Polynomial r(size_);
  for (const auto& t : terms_) {
    const int e = t.mono.exponent(slot);
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set_exponent(slot, e - 1);
    r.terms_.push_back({m, t.coeff * e});
  }
  return r;
}

namespace {

template <class Scalar>
Scalar evaluate_impl(LatticeSize size, const std::vector<Polynomial::Term>& terms,
                     const std::map<Var, Scalar>& point) {
  std::vector<Scalar> values(static_cast<std::size_t>(size.dim() + 1));
  std::vector<bool> needed(values.size(), false);
  for (const auto& t : terms)
    for (int s = 0; s <= size.dim(); ++s)
      if (t.mono.exponent(s) > 0) needed[static_cast<std::size_t>(s)] = true;
  for (int s = 0; s <= size.dim(); ++s) {
    if (!needed[static_cast<std::size_t>(s)]) continue;
    const Var v = var_of_slot(size, s);
    auto it = point.find(v);
    if (it == point.end()) throw std::out_of_range("no value assigned to " + v.name());
    values[static_cast<std::size_t>(s)] = it->second;
  }
  Scalar total = 0;
  for (const auto& t : terms) {
    Scalar term;
    if constexpr (std::is_same_v<Scalar, double>) {
      term = t.coeff.get_d();
    } else {
      term = t.coeff;
    }
    for (int s = 0; s <= size.dim(); ++s)
      for (int k = 0; k < t.mono.exponent(s); ++k) term *= values[static_cast<std::size_t>(s)];
    total += term;
  }
  return total;
}

}  // namespace

Rational Polynomial::evaluate(const std::map<Var, Rational>& point) const {
  return evaluate_impl<Rational>(size_, terms_, point);
}

double Polynomial::evaluate(const std::map<Var, double>& point) const {
  return evaluate_impl<double>(size_, terms_, point);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest-degree terms first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->coeff;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string factors;
    for (int s = 0; s <= size_.dim(); ++s) {
      const int e = it->mono.exponent(s);
      if (e == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += var_of_slot(size_, s).name();
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << factors;
    } else {
      os << c.get_str() << "*" << factors;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

// ---------------------------------------------------------------------------
// Expression parser: expr := term (('+'|'-') term)*
//                    term := unary (('*'|'/') unary)*
//                    unary := '-' unary | power
//                    power := atom ('^' integer)?

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, LatticeSize size) : text_(text), size_(size) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        Polynomial d = unary();
        if (d.degree() > 0) fail("division by a non-constant");
        if (d.is_zero()) fail("division by zero");
        acc *= Rational(1) / d.terms().front().coeff;
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial::constant(size_, Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const Var v = Var::parse(text_.substr(start, pos_ - start));
      if (!in_universe(size_, v)) fail("variable " + v.name() + " not in universe");
      return Polynomial::variable(size_, v);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  LatticeSize size_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, LatticeSize size) {
  return ExprParser(text, size).parse();
}

}  // namespace toda
