#pragma once

// Batch verification of the exact identities, with deterministic reports.

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace toda {

enum class CheckStatus { ExactPass, ModEquivalence, Fail };

std::string to_string(CheckStatus s);

struct CheckRecord {
  std::string suite;
  std::string identity;
  std::string anchor;
  int N = 0;
  std::optional<int> n;
  std::optional<int> l;
  std::optional<int> m;
  CheckStatus status = CheckStatus::Fail;
  /// Set for the equivalence suite (k in V - W = k chi).
  std::optional<std::string> k;
  std::optional<std::string> witness;
};

/// Suite names, in report order.
const std::vector<std::string>& all_suites();

struct VerifyConfig {
  int n_min = 2;
  int n_max = 4;
  /// Highest index of X_n used by the property iii, bracket and theorem
  /// suites.
  int nmax = 4;
  std::set<std::string> suites{all_suites().begin(), all_suites().end()};
  std::string out;
  /// 0 selects the hardware concurrency.
  int threads = 0;

  /// Throws std::invalid_argument when a bound or suite name is invalid.
  void validate() const;
};

/// Reads {"N": [lo, hi] | n, "nmax": k, "suites": [...], "threads": t,
/// "out": path}; absent keys keep the defaults. Throws std::invalid_argument.
VerifyConfig verify_config_from_json(const nlohmann::json& j, VerifyConfig base = {});

struct Report {
  VerifyConfig config;
  std::vector<CheckRecord> checks;

  bool passed() const;
  std::size_t count(CheckStatus s) const;
  nlohmann::json to_json() const;
  void write_table(std::ostream& os) const;
};

Report run_verify(const VerifyConfig& config);

}  // namespace toda
