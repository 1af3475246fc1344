#include <doctest.h>

#include <random>

#include "support.hpp"
#include "toda/geometry.hpp"
#include "toda/json_io.hpp"

using namespace toda;
using J = nlohmann::json;
namespace tj = toda::json;

namespace {

const LatticeSize N3{3};

}  // namespace

TEST_CASE("polynomial JSON schema") {
  const Polynomial p = parse_polynomial("-1/2*a1^2*b3 + 3*t + 2", N3);
  const J j = tj::to_json(p);
  CHECK(j.dump() ==
        R"([{"coeff":"2/1","exps":{}},{"coeff":"3/1","exps":{"t":1}},{"coeff":"-1/2","exps":{"a1":2,"b3":1}}])");
  CHECK(tj::polynomial_from_json(j, N3) == p);
  CHECK(tj::to_json(Polynomial(N3)).dump() == "[]");
  CHECK(tj::polynomial_from_json(J("a1*b2 - t"), N3) == parse_polynomial("a1*b2 - t", N3));
}

TEST_CASE("polynomial JSON round trip is bit exact") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = testing::random_polynomial(N3, rng, 8, 5, true);
    const std::string text = tj::to_json(p).dump();
    const Polynomial q = tj::polynomial_from_json(J::parse(text), N3);
    CHECK(q == p);
    CHECK(tj::to_json(q).dump() == text);
  }
}

TEST_CASE("polynomial JSON rejects malformed terms") {
  using E = tj::ParseError;
  CHECK_THROWS_AS(tj::polynomial_from_json(J::parse(R"({"coeff":"1/1"})"), N3), E);
  CHECK_THROWS_AS(tj::polynomial_from_json(J::parse(R"([{"coeff":"1/0","exps":{}}])"), N3), E);
  CHECK_THROWS_AS(tj::polynomial_from_json(J::parse(R"([{"coeff":"1/1","exps":{"a3":1}}])"), N3), E);
  CHECK_THROWS_AS(tj::polynomial_from_json(J::parse(R"([{"coeff":"1/1","exps":{"b1":-1}}])"), N3), E);
  CHECK_THROWS_AS(tj::polynomial_from_json(J::parse(R"([{"coeff":1.5,"exps":{}}])"), N3), E);
  CHECK_THROWS_AS(tj::polynomial_from_json(J("a1 +"), N3), E);
}

TEST_CASE("fields and tensors round trip") {
  Hierarchy h(N3);
  const VectorField x2 = h.X(2);
  CHECK(tj::vector_field_from_json(tj::to_json(x2)) == x2);
  const PoissonTensor w2 = h.w(2);
  const J doc = tj::to_json(w2);
  CHECK(doc["coordinates"] == J({"a1", "a2", "b1", "b2", "b3"}));
  CHECK(tj::poisson_tensor_from_json(doc) == w2);
  J broken = doc;
  broken["matrix"][0][2] = "a1";
  CHECK_THROWS_AS(tj::poisson_tensor_from_json(broken), tj::ParseError);
}

TEST_CASE("phase points") {
  const PhasePoint p = tj::phase_point_from_json(J::parse(R"({"a":[0.5],"b":[1,-1],"t":2})"));
  CHECK(p.a == std::vector<double>{0.5});
  CHECK(p.t == 2.0);
  const PhasePoint q = tj::phase_point_from_json(J::parse(R"({"q":[0,0,0],"p":[2,0,-2]})"));
  CHECK(q.a == std::vector<double>{0.5, 0.5});
  CHECK(q.b == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(tj::phase_point_from_json(tj::to_json(p)).b == p.b);
  CHECK_THROWS_AS(tj::phase_point_from_json(J::parse(R"({"a":[0.5,1],"b":[1,-1]})")),
                  tj::ParseError);
  CHECK_THROWS_AS(tj::phase_point_from_json(J::parse(R"({"a":[0.5],"b":[1,"x"]})")),
                  tj::ParseError);
  CHECK_THROWS_AS(tj::phase_point_from_json(J::parse(R"({"q":[0],"p":[0]})")), tj::ParseError);
}

TEST_CASE("symmetry candidates") {
  const SymmetryCandidate c =
      tj::candidate_from_json(J::parse(R"({"tau":"0","phi":["a1","a2"],"psi":["b1","b2","b3"]})"));
  CHECK(c.lattice().n() == 3);
  const SymmetryCandidate d = tj::candidate_from_json(tj::to_json(c));
  CHECK(d.phi == c.phi);
  CHECK(d.psi == c.psi);
  CHECK_THROWS_AS(tj::candidate_from_json(J::parse(R"({"tau":"0","phi":["a1"],"psi":["b1","b2","b3"]})")),
                  tj::ParseError);
  CHECK_THROWS_AS(tj::candidate_from_json(J::parse(R"({"phi":[],"psi":["b1","b2"]})")),
                  tj::ParseError);
}
