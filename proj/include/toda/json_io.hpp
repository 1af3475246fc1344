#pragma once

// JSON forms of the exact and numeric objects.
//
// Polynomial: [{"coeff": "num/den", "exps": {"a1": 2, "b3": 1}}, ...] in
// ascending canonical monomial order. A plain string is also accepted on input
// and parsed as an expression ("a1^2*b2 - 1/2*t").

#include <json.hpp>

#include "toda/dynamics.hpp"
#include "toda/fields.hpp"
#include "toda/ratpoly.hpp"
#include "toda/symmetry.hpp"
#include "toda/toda_core.hpp"

namespace toda::json {

using nlohmann::json;

/// Raised for structurally invalid documents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j, LatticeSize size);

/// {"N": n, "a": [poly...], "b": [poly...]}
json to_json(const VectorField& v);
VectorField vector_field_from_json(const json& j);

/// {"N": n, "coordinates": [names], "matrix": [[poly...]...]}
json to_json(const PoissonTensor& w);
PoissonTensor poisson_tensor_from_json(const json& j);

/// {"a": [...], "b": [...], "t": x}, or {"q": [...], "p": [...]} for input.
json to_json(const PhasePoint& p);
PhasePoint phase_point_from_json(const json& j);

/// {"tau": poly, "phi": [poly...], "psi": [poly...]}; N is taken from psi.
json to_json(const SymmetryCandidate& c);
SymmetryCandidate candidate_from_json(const json& j);

json to_json(const DeterminingResidual& r);
json to_json(const DriftReport& d);

}  // namespace toda::json
