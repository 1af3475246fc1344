#include "toda/fields.hpp"

#include <algorithm>
#include <stdexcept>

namespace toda {

std::string coordinate_name(LatticeSize size, int k) {
  return var_of_slot(size, k).name();
}

VectorField::VectorField(LatticeSize size)
    : size_(size), comps_(static_cast<std::size_t>(size.dim()), Polynomial(size)) {}

VectorField::VectorField(LatticeSize size, std::vector<Polynomial> components)
    : size_(size), comps_(std::move(components)) {
  if (comps_.size() != static_cast<std::size_t>(size.dim()))
    throw std::invalid_argument("vector field needs " + std::to_string(size.dim()) +
                                " components, got " + std::to_string(comps_.size()));
  for (const auto& c : comps_)
    if (!(c.size() == size)) throw std::invalid_argument("vector field component universe mismatch");
}

bool VectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool VectorField::is_autonomous() const {
  return std::none_of(comps_.begin(), comps_.end(),
                      [](const Polynomial& p) { return p.depends_on(Var::t()); });
}

VectorField VectorField::time_derivative() const {
  VectorField r(size_);
  for (std::size_t k = 0; k < comps_.size(); ++k) r.comps_[k] = comps_[k].differentiate(Var::t());
  return r;
}

int VectorField::degree() const {
  int d = -1;
  for (const auto& c : comps_) d = std::max(d, c.degree());
  return d;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  if (!(size_ == o.size_)) throw std::invalid_argument("vector field universe mismatch");
  for (std::size_t k = 0; k < comps_.size(); ++k) comps_[k] += o.comps_[k];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  if (!(size_ == o.size_)) throw std::invalid_argument("vector field universe mismatch");
  for (std::size_t k = 0; k < comps_.size(); ++k) comps_[k] -= o.comps_[k];
  return *this;
}

VectorField& VectorField::operator*=(const Rational& c) {
  for (auto& p : comps_) p *= c;
  return *this;
}

VectorField operator*(const Polynomial& f, const VectorField& x) {
  VectorField r(x.size_);
  for (std::size_t k = 0; k < x.comps_.size(); ++k) r.comps_[k] = f * x.comps_[k];
  return r;
}

std::string Witness::describe() const {
  if (value.is_zero()) return location + ": 0";
  const auto& lead = value.terms().back();
  const Polynomial lead_term = Polynomial::monomial(value.size(), lead.mono, lead.coeff);
  std::string s = location + ": " + lead_term.to_string();
  if (value.terms().size() > 1)
    s += " (+" + std::to_string(value.terms().size() - 1) + " more terms)";
  return s;
}

std::optional<Witness> first_nonzero(const VectorField& v) {
  for (int k = 0; k < v.dim(); ++k)
    if (!v[k].is_zero()) return Witness{coordinate_name(v.size(), k), v[k]};
  return std::nullopt;
}

// ---------------------------------------------------------------------------

PoissonTensor::PoissonTensor(LatticeSize size)
    : size_(size), m_(static_cast<std::size_t>(size.dim() * size.dim()), Polynomial(size)) {}

PoissonTensor PoissonTensor::from_matrix(LatticeSize size, std::vector<Polynomial> entries) {
  PoissonTensor w(size);
  if (entries.size() != w.m_.size())
    throw std::invalid_argument("Poisson tensor needs " + std::to_string(w.m_.size()) + " entries");
  w.m_ = std::move(entries);
  if (!w.is_antisymmetric()) throw std::invalid_argument("tensor is not antisymmetric");
  return w;
}

void PoissonTensor::set(int i, int j, const Polynomial& p) {
  if (i == j && !p.is_zero()) throw std::invalid_argument("diagonal of a bivector must vanish");
  m_[static_cast<std::size_t>(i * dim() + j)] = p;
  m_[static_cast<std::size_t>(j * dim() + i)] = -p;
}

bool PoissonTensor::is_zero() const {
  return std::all_of(m_.begin(), m_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool PoissonTensor::is_antisymmetric() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = i; j < dim(); ++j)
      if (!((*this)(i, j) + (*this)(j, i)).is_zero()) return false;
  return true;
}

PoissonTensor& PoissonTensor::operator+=(const PoissonTensor& o) {
  if (!(size_ == o.size_)) throw std::invalid_argument("tensor universe mismatch");
  for (std::size_t k = 0; k < m_.size(); ++k) m_[k] += o.m_[k];
  return *this;
}

PoissonTensor& PoissonTensor::operator-=(const PoissonTensor& o) {
  if (!(size_ == o.size_)) throw std::invalid_argument("tensor universe mismatch");
  for (std::size_t k = 0; k < m_.size(); ++k) m_[k] -= o.m_[k];
  return *this;
}

PoissonTensor& PoissonTensor::operator*=(const Rational& c) {
  for (auto& p : m_) p *= c;
  return *this;
}

std::optional<Witness> first_nonzero(const PoissonTensor& w) {
  for (int i = 0; i < w.dim(); ++i)
    for (int j = i + 1; j < w.dim(); ++j)
      if (!w(i, j).is_zero())
        return Witness{"{" + coordinate_name(w.size(), i) + "," + coordinate_name(w.size(), j) + "}",
                       w(i, j)};
  return std::nullopt;
}

// ---------------------------------------------------------------------------

ThreeTensor::ThreeTensor(LatticeSize size) : size_(size) {
  const std::size_t d = static_cast<std::size_t>(size.dim());
  c_.assign(d * d * d, Polynomial(size));
}

std::size_t ThreeTensor::index(int i, int j, int k) const {
  const std::size_t d = static_cast<std::size_t>(size_.dim());
  return (static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)) * d +
         static_cast<std::size_t>(k);
}

Polynomial ThreeTensor::at(int i, int j, int k) const {
  if (i == j || j == k || i == k) return Polynomial(size_);
  int idx[3] = {i, j, k};
  int sign = 1;
  // Bubble sort on three elements, tracking parity.
  for (int pass = 0; pass < 2; ++pass)
    for (int p = 0; p < 2 - pass; ++p)
      if (idx[p] > idx[p + 1]) {
        std::swap(idx[p], idx[p + 1]);
        sign = -sign;
      }
  const Polynomial& v = c_[index(idx[0], idx[1], idx[2])];
  return sign > 0 ? v : -v;
}

void ThreeTensor::set_sorted(int i, int j, int k, Polynomial p) {
  if (!(i < j && j < k)) throw std::invalid_argument("ThreeTensor::set_sorted needs i < j < k");
  c_[index(i, j, k)] = std::move(p);
}

bool ThreeTensor::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::optional<Witness> ThreeTensor::first_nonzero() const {
  const int d = size_.dim();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        const auto& v = c_[index(i, j, k)];
        if (!v.is_zero())
          return Witness{"[" + coordinate_name(size_, i) + "," + coordinate_name(size_, j) + "," +
                             coordinate_name(size_, k) + "]",
                         v};
      }
  return std::nullopt;
}

}  // namespace toda
