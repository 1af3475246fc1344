#include "toda/toda_core.hpp"

#include <cmath>
#include <stdexcept>

namespace toda {

LatticeSize PhasePoint::lattice() const {
  if (b.size() < 2 || a.size() + 1 != b.size())
    throw std::invalid_argument("phase point needs N >= 2 b-values and N-1 a-values (got " +
                                std::to_string(a.size()) + " a, " + std::to_string(b.size()) + " b)");
  return LatticeSize(static_cast<int>(b.size()));
}

std::vector<double> PhasePoint::state() const {
  std::vector<double> z(a);
  z.insert(z.end(), b.begin(), b.end());
  return z;
}

PhasePoint PhasePoint::from_state(LatticeSize size, std::span<const double> z, double t) {
  if (z.size() != static_cast<std::size_t>(size.dim()))
    throw std::invalid_argument("state length does not match lattice size");
  PhasePoint p;
  p.a.assign(z.begin(), z.begin() + size.num_a());
  p.b.assign(z.begin() + size.num_a(), z.end());
  p.t = t;
  return p;
}

bool PhasePoint::is_finite() const {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  for (double x : b)
    if (!std::isfinite(x)) return false;
  return std::isfinite(t);
}

Eigen::MatrixXd JacobiMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(diag.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
    m(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
  }
  return m;
}

PhasePoint flaschka(std::span<const double> q, std::span<const double> p) {
  if (q.size() != p.size()) throw std::invalid_argument("q and p must have equal length");
  if (q.size() < 2) throw std::invalid_argument("need at least two particles");
  PhasePoint z;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) z.a.push_back(0.5 * std::exp(0.5 * (q[i] - q[i + 1])));
  for (double pi : p) z.b.push_back(-0.5 * pi);
  z.t = 0.0;
  return z;
}

Eigen::MatrixXd lax_L(const PhasePoint& point) {
  point.lattice();
  return JacobiMatrix::from_point(point).dense();
}

Eigen::MatrixXd lax_B(const PhasePoint& point) {
  const auto n = static_cast<Eigen::Index>(point.lattice().n());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = point.a[static_cast<std::size_t>(i)];
    m(i + 1, i) = -point.a[static_cast<std::size_t>(i)];
  }
  return m;
}

double hamiltonian_value(const PhasePoint& point, int n) {
  if (n < 1) throw std::invalid_argument("H_n needs n >= 1");
  const Eigen::MatrixXd l = lax_L(point);
  Eigen::MatrixXd power = l;
  for (int k = 1; k < n; ++k) power = power * l;
  return power.trace() / n;
}

// ---------------------------------------------------------------------------

Polynomial a_var(LatticeSize size, int i) {
  if (i < 1 || i > size.num_a()) return Polynomial(size);
  return Polynomial::variable(size, Var::a(i));
}

Polynomial b_var(LatticeSize size, int i) {
  if (i < 1 || i > size.num_b()) return Polynomial(size);
  return Polynomial::variable(size, Var::b(i));
}

Polynomial t_var(LatticeSize size) { return Polynomial::variable(size, Var::t()); }

PolyMatrix::PolyMatrix(LatticeSize size, int rows)
    : size_(size), n_(rows), e_(static_cast<std::size_t>(rows * rows), Polynomial(size)) {}

Polynomial PolyMatrix::trace() const {
  Polynomial s(size_);
  for (int i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y) {
  if (x.n_ != y.n_) throw std::invalid_argument("matrix shape mismatch");
  PolyMatrix r(x.size_, x.n_);
  for (int i = 0; i < x.n_; ++i)
    for (int k = 0; k < x.n_; ++k) {
      const Polynomial& xik = x(i, k);
      if (xik.is_zero()) continue;
      for (int j = 0; j < x.n_; ++j) {
        const Polynomial& ykj = y(k, j);
        if (!ykj.is_zero()) r(i, j) += xik * ykj;
      }
    }
  return r;
}

PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y) {
  if (x.n_ != y.n_) throw std::invalid_argument("matrix shape mismatch");
  PolyMatrix r = x;
  for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] -= y.e_[k];
  return r;
}

PolyMatrix symbolic_lax(LatticeSize size) {
  const int n = size.n();
  PolyMatrix l(size, n);
  for (int i = 0; i < n; ++i) l(i, i) = b_var(size, i + 1);
  for (int i = 0; i + 1 < n; ++i) {
    l(i, i + 1) = a_var(size, i + 1);
    l(i + 1, i) = a_var(size, i + 1);
  }
  return l;
}

PolyMatrix symbolic_lax_B(LatticeSize size) {
  const int n = size.n();
  PolyMatrix m(size, n);
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = a_var(size, i + 1);
    m(i + 1, i) = -a_var(size, i + 1);
  }
  return m;
}

PolyMatrix lax_commutator(LatticeSize size) {
  const PolyMatrix l = symbolic_lax(size);
  const PolyMatrix b = symbolic_lax_B(size);
  return b * l - l * b;
}

Polynomial hamiltonian(int n, LatticeSize size) {
  if (n < 1) throw std::invalid_argument("H_n needs n >= 1, got " + std::to_string(n));
  const PolyMatrix l = symbolic_lax(size);
  PolyMatrix power = l;
  for (int k = 1; k < n; ++k) power = power * l;
  return power.trace() * make_rational(1, n);
}

std::vector<Polynomial> gradient(const Polynomial& h) {
  const LatticeSize size = h.size();
  std::vector<Polynomial> g;
  g.reserve(static_cast<std::size_t>(size.dim()));
  for (int k = 0; k < size.dim(); ++k) g.push_back(h.differentiate_slot(k));
  return g;
}

VectorField toda_rhs(LatticeSize size) {
  const int n = size.n();
  std::vector<Polynomial> comps;
  for (int i = 1; i <= n - 1; ++i)
    comps.push_back(a_var(size, i) * (b_var(size, i + 1) - b_var(size, i)));
  for (int i = 1; i <= n; ++i) {
    const Polynomial ai = a_var(size, i);
    const Polynomial aim1 = a_var(size, i - 1);
    comps.push_back((ai * ai - aim1 * aim1) * Rational(2));
  }
  return VectorField(size, std::move(comps));
}

PolyMatrix tridiagonal_of(const VectorField& v) {
  const LatticeSize size = v.size();
  const int n = size.n();
  PolyMatrix m(size, n);
  for (int i = 1; i <= n; ++i) m(i - 1, i - 1) = v.b(i);
  for (int i = 1; i < n; ++i) {
    m(i - 1, i) = v.a(i);
    m(i, i - 1) = v.a(i);
  }
  return m;
}

FlowResiduals<Polynomial> symbolic_residuals(LatticeSize size, std::span<const Polynomial> adot,
                                             std::span<const Polynomial> bdot) {
  std::vector<Polynomial> a;
  std::vector<Polynomial> b;
  for (int i = 1; i <= size.num_a(); ++i) a.push_back(a_var(size, i));
  for (int i = 1; i <= size.num_b(); ++i) b.push_back(b_var(size, i));
  if (adot.size() != a.size() || bdot.size() != b.size())
    throw std::invalid_argument("derivative vectors do not match lattice size");
  return residuals<Polynomial>(a, b, adot, bdot);
}

}  // namespace toda
