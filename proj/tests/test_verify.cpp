#include <doctest.h>

#include <sstream>

#include "toda/verify.hpp"

using namespace toda;
using J = nlohmann::json;

TEST_CASE("N = 2 passes every suite") {
  VerifyConfig cfg;
  cfg.n_min = cfg.n_max = 2;
  const Report rep = run_verify(cfg);
  CHECK(rep.passed());
  CHECK(rep.checks.size() > 50);
  for (const auto& r : rep.checks) {
    CAPTURE(r.identity);
    CHECK(r.status == CheckStatus::ExactPass);
    CHECK_FALSE(r.anchor.empty());
  }
}

TEST_CASE("reports are deterministic across thread counts") {
  VerifyConfig one;
  one.n_min = 2;
  one.n_max = 3;
  one.threads = 1;
  VerifyConfig many = one;
  many.threads = 4;
  const std::string a = run_verify(one).to_json().dump();
  const std::string b = run_verify(many).to_json().dump();
  const std::string c = run_verify(many).to_json().dump();
  CHECK(a == b);
  CHECK(b == c);
}

TEST_CASE("equivalence checks report k") {
  VerifyConfig cfg;
  cfg.n_min = cfg.n_max = 3;
  cfg.suites = {"equivalence"};
  const Report rep = run_verify(cfg);
  REQUIRE(rep.checks.size() == 6);
  for (const auto& r : rep.checks) {
    REQUIRE(r.k.has_value());
    CHECK(*r.k == "0/1");
  }
  std::ostringstream os;
  rep.write_table(os);
  CHECK(os.str().find("k = 0/1") != std::string::npos);
  CHECK(os.str().find("6 checks: 6 exact-pass") != std::string::npos);
}

TEST_CASE("config parsing") {
  const VerifyConfig c = verify_config_from_json(J::parse(R"({"N":[2,3],"nmax":2,"suites":["theorem"]})"));
  CHECK(c.n_min == 2);
  CHECK(c.n_max == 3);
  CHECK(c.nmax == 2);
  CHECK(c.suites == std::set<std::string>{"theorem"});
  CHECK(verify_config_from_json(J::parse(R"({"N":4})")).n_min == 4);
  CHECK_THROWS_AS(verify_config_from_json(J::parse(R"({"N":1})")), std::invalid_argument);
  CHECK_THROWS_AS(verify_config_from_json(J::parse(R"({"N":[3,2]})")), std::invalid_argument);
  CHECK_THROWS_AS(verify_config_from_json(J::parse(R"({"nmax":0})")), std::invalid_argument);
  CHECK_THROWS_AS(verify_config_from_json(J::parse(R"({"suites":["nope"]})")), std::invalid_argument);
  CHECK_THROWS_AS(verify_config_from_json(J::parse(R"({"colour":1})")), std::invalid_argument);
  CHECK_THROWS_AS(verify_config_from_json(J::parse(R"([1,2])")), std::invalid_argument);
}

TEST_CASE("report JSON layout") {
  VerifyConfig cfg;
  cfg.n_min = cfg.n_max = 2;
  cfg.suites = {"property-iii"};
  const J doc = run_verify(cfg).to_json();
  CHECK(doc["summary"]["fail"] == 0);
  const J& first = doc["checks"][0];
  CHECK(first["suite"] == "property-iii");
  CHECK(first["n"] == -1);
  CHECK(first["l"].is_null());
  CHECK(first["status"] == "exact-pass");
  CHECK(doc["conventions"].contains("hierarchy"));
}
