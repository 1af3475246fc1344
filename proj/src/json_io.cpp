#include "toda/json_io.hpp"

#include <string>

namespace toda::json {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::vector<double> number_array(const json& j, const char* key) {
  const json& arr = field(j, key);
  if (!arr.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& x : arr) {
    if (!x.is_number()) throw ParseError(std::string("\"") + key + "\" must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

LatticeSize size_field(const json& j) {
  const json& n = field(j, "N");
  if (!n.is_number_integer()) throw ParseError("\"N\" must be an integer");
  try {
    return LatticeSize(n.get<int>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<Polynomial> polynomial_array(const json& j, const char* key, LatticeSize size) {
  const json& arr = field(j, key);
  if (!arr.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
  std::vector<Polynomial> out;
  for (const auto& x : arr) out.push_back(polynomial_from_json(x, size));
  return out;
}

}  // namespace

json to_json(const Polynomial& p) {
  const LatticeSize size = p.size();
  json arr = json::array();
  for (const auto& term : p.terms()) {
    json exps = json::object();
    for (int s = 0; s <= size.dim(); ++s)
      if (const int e = term.mono.exponent(s); e > 0) exps[var_of_slot(size, s).name()] = e;
    arr.push_back({{"coeff", format_rational(term.coeff)}, {"exps", exps}});
  }
  return arr;
}

Polynomial polynomial_from_json(const json& j, LatticeSize size) {
  try {
    if (j.is_string()) return parse_polynomial(j.get<std::string>(), size);
    if (j.is_number_integer()) return Polynomial::constant(size, Rational(j.get<long>()));
    if (!j.is_array()) throw ParseError("polynomial must be an array of terms or a string");
    Polynomial p(size);
    for (const auto& term : j) {
      const json& c = field(term, "coeff");
      Rational coeff;
      if (c.is_string()) {
        coeff = parse_rational(c.get<std::string>());
      } else if (c.is_number_integer()) {
        coeff = Rational(c.get<long>());
      } else {
        throw ParseError("\"coeff\" must be a \"num/den\" string or an integer");
      }
      Monomial m;
      const json& exps = field(term, "exps");
      if (!exps.is_object()) throw ParseError("\"exps\" must be an object");
      for (const auto& [name, e] : exps.items()) {
        if (!e.is_number_integer() || e.get<long>() < 0)
          throw ParseError("exponent of " + name + " must be a non-negative integer");
        const int slot = slot_of(size, Var::parse(name));
        m.set_exponent(slot, m.exponent(slot) + e.get<int>());
      }
      p += Polynomial::monomial(size, m, coeff);
    }
    return p;
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(e.what());
  }
}

json to_json(const VectorField& v) {
  const LatticeSize size = v.size();
  json a = json::array();
  json b = json::array();
  for (int i = 1; i <= size.num_a(); ++i) a.push_back(to_json(v.a(i)));
  for (int i = 1; i <= size.num_b(); ++i) b.push_back(to_json(v.b(i)));
  return {{"N", size.n()}, {"a", a}, {"b", b}};
}

VectorField vector_field_from_json(const json& j) {
  const LatticeSize size = size_field(j);
  std::vector<Polynomial> comps = polynomial_array(j, "a", size);
  std::vector<Polynomial> bs = polynomial_array(j, "b", size);
  if (comps.size() != static_cast<std::size_t>(size.num_a()) ||
      bs.size() != static_cast<std::size_t>(size.num_b()))
    throw ParseError("vector field needs N-1 a-components and N b-components");
  comps.insert(comps.end(), bs.begin(), bs.end());
  return VectorField(size, std::move(comps));
}

json to_json(const PoissonTensor& w) {
  const LatticeSize size = w.size();
  json names = json::array();
  json rows = json::array();
  for (int i = 0; i < w.dim(); ++i) {
    names.push_back(coordinate_name(size, i));
    json row = json::array();
    for (int k = 0; k < w.dim(); ++k) row.push_back(to_json(w(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"N", size.n()}, {"coordinates", names}, {"matrix", rows}};
}

PoissonTensor poisson_tensor_from_json(const json& j) {
  const LatticeSize size = size_field(j);
  const json& rows = field(j, "matrix");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(size.dim()))
    throw ParseError("\"matrix\" must have 2N-1 rows");
  std::vector<Polynomial> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(size.dim()))
      throw ParseError("\"matrix\" rows must have 2N-1 entries");
    for (const auto& x : row) entries.push_back(polynomial_from_json(x, size));
  }
  try {
    return PoissonTensor::from_matrix(size, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json to_json(const PhasePoint& p) { return {{"a", p.a}, {"b", p.b}, {"t", p.t}}; }

PhasePoint phase_point_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("phase point must be an object");
  PhasePoint p;
  if (j.contains("q") || j.contains("p")) {
    const auto q = number_array(j, "q");
    const auto mom = number_array(j, "p");
    if (q.size() != mom.size() || q.size() < 2) throw ParseError("q and p need equal length >= 2");
    p = flaschka(q, mom);
  } else {
    p.a = number_array(j, "a");
    p.b = number_array(j, "b");
  }
  if (j.contains("t")) {
    if (!j.at("t").is_number()) throw ParseError("\"t\" must be a number");
    p.t = j.at("t").get<double>();
  }
  try {
    p.lattice();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (!p.is_finite()) throw ParseError("phase point has non-finite entries");
  return p;
}

json to_json(const SymmetryCandidate& c) {
  json phi = json::array();
  json psi = json::array();
  for (const auto& p : c.phi) phi.push_back(to_json(p));
  for (const auto& p : c.psi) psi.push_back(to_json(p));
  return {{"tau", to_json(c.tau)}, {"phi", phi}, {"psi", psi}};
}

SymmetryCandidate candidate_from_json(const json& j) {
  const json& psi = field(j, "psi");
  if (!psi.is_array()) throw ParseError("\"psi\" must be an array");
  LatticeSize size(2);
  try {
    size = LatticeSize(static_cast<int>(psi.size()));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("psi: ") + e.what());
  }
  SymmetryCandidate c{polynomial_from_json(field(j, "tau"), size), polynomial_array(j, "phi", size),
                      polynomial_array(j, "psi", size)};
  try {
    c.lattice();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return c;
}

json to_json(const DeterminingResidual& r) {
  json gamma = json::array();
  json delta = json::array();
  for (const auto& p : r.gamma) gamma.push_back(p.to_string());
  for (const auto& p : r.delta) delta.push_back(p.to_string());
  return {{"gamma", gamma}, {"delta", delta}, {"zero", r.is_zero()}};
}

json to_json(const DriftReport& d) {
  return {{"eigenvalue_drift", d.eigenvalue_drift}, {"H_drift", d.h_drift}};
}

}  // namespace toda::json
