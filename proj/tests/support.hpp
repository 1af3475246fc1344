#pragma once

#include <random>

#include "toda/fields.hpp"
#include "toda/ratpoly.hpp"

namespace toda::testing {

// Random polynomial with small integer/half coefficients.
inline Polynomial random_polynomial(LatticeSize size, std::mt19937_64& rng, int max_terms = 5,
                                    int max_degree = 3, bool with_t = false) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 2);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> slot(0, with_t ? size.dim() : size.dim() - 1);
  Polynomial p(size);
  const int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    Monomial m;
    const int d = deg(rng);
    for (int j = 0; j < d; ++j) {
      const int s = slot(rng);
      m.set_exponent(s, m.exponent(s) + 1);
    }
    p += Polynomial::monomial(size, m, make_rational(num(rng), den(rng)));
  }
  return p;
}

inline VectorField random_field(LatticeSize size, std::mt19937_64& rng, int max_terms = 3,
                                int max_degree = 2, bool with_t = false) {
  VectorField v(size);
  for (int i = 0; i < v.dim(); ++i) v[i] = random_polynomial(size, rng, max_terms, max_degree, with_t);
  return v;
}

}  // namespace toda::testing
