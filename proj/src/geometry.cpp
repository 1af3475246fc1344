#include "toda/geometry.hpp"

#include <stdexcept>

#include "toda/toda_core.hpp"

namespace toda {

namespace {

void require_same(LatticeSize x, LatticeSize y) {
  if (!(x == y)) throw std::invalid_argument("universe mismatch");
}

// All first partials of every component, indexed [component][slot].
std::vector<std::vector<Polynomial>> jacobian(const VectorField& v) {
  std::vector<std::vector<Polynomial>> j;
  j.reserve(static_cast<std::size_t>(v.dim()));
  for (int i = 0; i < v.dim(); ++i) j.push_back(gradient(v[i]));
  return j;
}

}  // namespace

Polynomial apply(const VectorField& v, const Polynomial& f) {
  require_same(v.size(), f.size());
  Polynomial r(f.size());
  for (int k = 0; k < v.dim(); ++k) {
    if (v[k].is_zero()) continue;
    const Polynomial df = f.differentiate_slot(k);
    if (!df.is_zero()) r += v[k] * df;
  }
  return r;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  require_same(v.size(), w.size());
  VectorField r(v.size());
  for (int i = 0; i < v.dim(); ++i) r[i] = apply(v, w[i]) - apply(w, v[i]);
  return r;
}

VectorField hamiltonian_field(const PoissonTensor& w, const Polynomial& h) {
  require_same(w.size(), h.size());
  const auto grad = gradient(h);
  VectorField r(w.size());
  for (int i = 0; i < w.dim(); ++i) {
    Polynomial s(w.size());
    for (int j = 0; j < w.dim(); ++j) {
      const auto& g = grad[static_cast<std::size_t>(j)];
      if (!w(i, j).is_zero() && !g.is_zero()) s += w(i, j) * g;
    }
    r[i] = std::move(s);
  }
  return r;
}

Polynomial poisson_bracket(const PoissonTensor& w, const Polynomial& f, const Polynomial& g) {
  require_same(w.size(), f.size());
  const auto gf = gradient(f);
  const VectorField xg = hamiltonian_field(w, g);
  Polynomial s(w.size());
  for (int i = 0; i < w.dim(); ++i) {
    const auto& d = gf[static_cast<std::size_t>(i)];
    if (!d.is_zero() && !xg[i].is_zero()) s += d * xg[i];
  }
  return s;
}

PoissonTensor lie_derivative_tensor(const VectorField& x, const PoissonTensor& w) {
  require_same(x.size(), w.size());
  if (!x.is_autonomous())
    throw std::invalid_argument("lie_derivative_tensor needs an autonomous vector field");
  const int d = w.dim();
  const auto dx = jacobian(x);
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Polynomial s = apply(x, w(i, j));
      for (int k = 0; k < d; ++k) {
        const auto& dxi = dx[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        const auto& dxj = dx[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        if (!dxi.is_zero() && !w(k, j).is_zero()) s -= dxi * w(k, j);
        if (!dxj.is_zero() && !w(i, k).is_zero()) s -= dxj * w(i, k);
      }
      out.push_back(std::move(s));
    }
  }
  // Antisymmetry of the result is checked by from_matrix.
  try {
    return PoissonTensor::from_matrix(x.size(), std::move(out));
  } catch (const std::invalid_argument&) {
    throw std::logic_error("Lie derivative of a bivector lost antisymmetry");
  }
}

ThreeTensor schouten_self(const PoissonTensor& w) {
  const int d = w.dim();
  // Partials d_l w^{ij}, cached for i < j.
  std::vector<std::vector<Polynomial>> dw(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) dw[static_cast<std::size_t>(i * d + j)] = gradient(w(i, j));
  const auto partial = [&](int l, int i, int j) -> Polynomial {
    if (i < j) return dw[static_cast<std::size_t>(i * d + j)][static_cast<std::size_t>(l)];
    return -dw[static_cast<std::size_t>(j * d + i)][static_cast<std::size_t>(l)];
  };

  ThreeTensor out(w.size());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        Polynomial s(w.size());
        for (int l = 0; l < d; ++l) {
          if (!w(i, l).is_zero()) s += w(i, l) * partial(l, j, k);
          if (!w(j, l).is_zero()) s += w(j, l) * partial(l, k, i);
          if (!w(k, l).is_zero()) s += w(k, l) * partial(l, i, j);
        }
        out.set_sorted(i, j, k, std::move(s));
      }
  return out;
}

PoissonTensor linear_toda_tensor(LatticeSize size) {
  PoissonTensor w(size);
  for (int i = 1; i <= size.num_a(); ++i) {
    const int ai = slot_of(size, Var::a(i));
    const Polynomial a = a_var(size, i);
    w.set(ai, slot_of(size, Var::b(i)), -a);
    w.set(ai, slot_of(size, Var::b(i + 1)), a);
  }
  return w;
}

VectorField master_X_explicit(int n, LatticeSize size) {
  const int N = size.n();
  const auto a = [&](int i) { return a_var(size, i); };
  const auto b = [&](int i) { return b_var(size, i); };
  const auto c = [](long k) { return Rational(k); };
  std::vector<Polynomial> comps;

  switch (n) {
    case -1:
      for (int i = 1; i <= N - 1; ++i) comps.push_back(Polynomial(size));
      for (int i = 1; i <= N; ++i) comps.push_back(Polynomial::constant(size, 1));
      break;
    case 0:
      for (int i = 1; i <= N - 1; ++i) comps.push_back(a(i));
      for (int i = 1; i <= N; ++i) comps.push_back(b(i));
      break;
    case 1:
      for (int k = 1; k <= N - 1; ++k)
        comps.push_back(c(-k) * a(k) * b(k) + c(k + 2) * a(k) * b(k + 1));
      for (int k = 1; k <= N; ++k)
        comps.push_back(c(2 * k + 3) * a(k).pow(2) + c(1 - 2 * k) * a(k - 1).pow(2) + b(k).pow(2));
      break;
    case 2: {
      // sigma_k = b_1 + ... + b_{k-1}
      const auto sigma = [&](int k) {
        Polynomial s(size);
        for (int i = 1; i <= k - 1; ++i) s += b(i);
        return s;
      };
      for (int k = 1; k <= N - 1; ++k) {
        comps.push_back(c(2 - k) * a(k - 1).pow(2) * a(k) + c(1 - k) * a(k) * b(k).pow(2) +
                        a(k) * b(k) * b(k + 1) + c(k + 1) * a(k) * a(k + 1).pow(2) +
                        c(k + 1) * a(k) * b(k + 1).pow(2) + a(k).pow(3) +
                        sigma(k) * a(k) * (b(k + 1) - b(k)));
      }
      for (int k = 1; k <= N; ++k) {
        comps.push_back(c(2) * sigma(k) * a(k).pow(2) - c(2) * sigma(k - 1) * a(k - 1).pow(2) +
                        c(2 * k + 2) * a(k).pow(2) * b(k) + c(2 * k + 1) * a(k).pow(2) * b(k + 1) +
                        c(3 - 2 * k) * a(k - 1).pow(2) * b(k - 1) +
                        c(4 - 2 * k) * a(k - 1).pow(2) * b(k) + b(k).pow(3));
      }
      break;
    }
    default:
      throw std::invalid_argument("no closed form for X_" + std::to_string(n));
  }
  return VectorField(size, std::move(comps));
}

// ---------------------------------------------------------------------------

Hierarchy::Hierarchy(LatticeSize size) : size_(size) {}

Hierarchy::Hierarchy(LatticeSize size, VectorField x1, PoissonTensor w1) : size_(size) {
  require_same(size, x1.size());
  require_same(size, w1.size());
  x_.emplace(1, std::move(x1));
  w_.emplace(1, std::move(w1));
}

const Polynomial& Hierarchy::H(int n) {
  std::lock_guard lock(mu_);
  return H_locked(n);
}

const Polynomial& Hierarchy::H_locked(int n) {
  if (auto it = h_.find(n); it != h_.end()) return it->second;
  return h_.emplace(n, hamiltonian(n, size_)).first->second;
}

const VectorField& Hierarchy::X(int n) {
  std::lock_guard lock(mu_);
  return X_locked(n);
}

const VectorField& Hierarchy::X_locked(int n) {
  if (n < -1) throw std::invalid_argument("X_n is defined for n >= -1, got " + std::to_string(n));
  if (auto it = x_.find(n); it != x_.end()) return it->second;
  if (n <= 2) return x_.emplace(n, master_X_explicit(n, size_)).first->second;
  VectorField xn = lie_bracket(X_locked(1), X_locked(n - 1)) * make_rational(1, n - 2);
  return x_.emplace(n, std::move(xn)).first->second;
}

const VectorField& Hierarchy::chi(int l) { return chi(l, 1); }

const VectorField& Hierarchy::chi(int l, int n) {
  std::lock_guard lock(mu_);
  const auto key = std::make_pair(l, n);
  if (auto it = chi_.find(key); it != chi_.end()) return it->second;
  VectorField f = hamiltonian_field(w_locked(n), H_locked(l));
  return chi_.emplace(key, std::move(f)).first->second;
}

const PoissonTensor& Hierarchy::w(int n) {
  std::lock_guard lock(mu_);
  return w_locked(n);
}

const PoissonTensor& Hierarchy::w_locked(int n) {
  if (n < 1) throw std::invalid_argument("w_n is defined for n >= 1, got " + std::to_string(n));
  if (auto it = w_.find(n); it != w_.end()) return it->second;
  PoissonTensor wn(size_);
  if (n == 1) {
    wn = linear_toda_tensor(size_);
  } else if (n == 2) {
    wn = lie_derivative_tensor(X_locked(1), w_locked(1)) * make_rational(-1, 2);
  } else if (n == 3) {
    wn = lie_derivative_tensor(X_locked(1), w_locked(2)) * Rational(-1);
  } else {
    const int m = (n % 2 == 0) ? 2 : 3;
    const int k = n - m;
    const int coeff = k - m + 2;
    if (coeff == 0) throw std::logic_error("zero coefficient in Poisson hierarchy schedule");
    wn = lie_derivative_tensor(X_locked(k), w_locked(m)) * make_rational(-1, coeff);
  }
  return w_.emplace(n, std::move(wn)).first->second;
}

VectorField master_X(int n, LatticeSize size) {
  Hierarchy h(size);
  return h.X(n);
}

PoissonTensor poisson_w(int n, LatticeSize size) {
  Hierarchy h(size);
  return h.w(n);
}

std::optional<Rational> equivalent_mod_field(const VectorField& v, const VectorField& w,
                                             const VectorField& chi) {
  const VectorField diff = v - w;
  if (diff.is_zero()) return Rational(0);
  for (int i = 0; i < diff.dim(); ++i) {
    if (diff[i].is_zero()) continue;
    const auto& lead = diff[i].terms().back();
    const Rational c = chi[i].coefficient(lead.mono);
    if (c == 0) return std::nullopt;
    Rational k = lead.coeff / c;
    if (diff == chi * k) return k;
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Rational> equivalent_mod_chi(const VectorField& v, const VectorField& w, int level) {
  const LatticeSize size = v.size();
  const VectorField chi = hamiltonian_field(linear_toda_tensor(size), hamiltonian(level, size));
  return equivalent_mod_field(v, w, chi);
}

}  // namespace toda
