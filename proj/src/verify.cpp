#include "toda/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "toda/geometry.hpp"
#include "toda/symmetry.hpp"
#include "toda/toda_core.hpp"

namespace toda {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::ExactPass:
      return "exact-pass";
    case CheckStatus::ModEquivalence:
      return "pass-mod-equivalence";
    case CheckStatus::Fail:
      return "fail";
  }
  return "fail";
}

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names{
      "poisson", "involution", "property-iii", "property-iv", "brackets",
      "lenard",  "theorem",    "known",        "equivalence"};
  return names;
}

void VerifyConfig::validate() const {
  if (n_min < 2) throw std::invalid_argument("N must be >= 2");
  if (n_max < n_min) throw std::invalid_argument("N range is empty");
  if (n_max > LatticeSize::kMaxSymbolic)
    throw std::invalid_argument("N must be <= " + std::to_string(LatticeSize::kMaxSymbolic));
  if (nmax < 1) throw std::invalid_argument("nmax must be >= 1");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  for (const auto& s : suites)
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
      throw std::invalid_argument("unknown suite \"" + s + "\"");
}

VerifyConfig verify_config_from_json(const nlohmann::json& j, VerifyConfig c) {
  const auto integer = [](const nlohmann::json& x, const char* what) {
    if (!x.is_number_integer()) throw std::invalid_argument(std::string(what) + " must be an integer");
    return x.get<int>();
  };
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "N") {
      if (value.is_array()) {
        if (value.size() != 2) throw std::invalid_argument("\"N\" range must be [lo, hi]");
        c.n_min = integer(value[0], "N");
        c.n_max = integer(value[1], "N");
      } else {
        c.n_min = c.n_max = integer(value, "N");
      }
    } else if (key == "nmax") {
      c.nmax = integer(value, "nmax");
    } else if (key == "threads") {
      c.threads = integer(value, "threads");
    } else if (key == "out") {
      if (!value.is_string()) throw std::invalid_argument("\"out\" must be a string");
      c.out = value.get<std::string>();
    } else if (key == "suites") {
      if (!value.is_array()) throw std::invalid_argument("\"suites\" must be an array");
      c.suites.clear();
      for (const auto& s : value) {
        if (!s.is_string()) throw std::invalid_argument("suite names must be strings");
        c.suites.insert(s.get<std::string>());
      }
    } else {
      throw std::invalid_argument("unknown config key \"" + key + "\"");
    }
  }
  c.validate();
  return c;
}

bool Report::passed() const { return count(CheckStatus::Fail) == 0; }

std::size_t Report::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const CheckRecord& r) { return r.status == s; }));
}

nlohmann::json Report::to_json() const {
  using nlohmann::json;
  const auto opt = [](const auto& v) -> json { return v ? json(*v) : json(nullptr); };
  json arr = json::array();
  for (const auto& r : checks) {
    arr.push_back({{"suite", r.suite},
                   {"identity", r.identity},
                   {"anchor", r.anchor},
                   {"N", r.N},
                   {"n", opt(r.n)},
                   {"l", opt(r.l)},
                   {"m", opt(r.m)},
                   {"status", to_string(r.status)},
                   {"k", opt(r.k)},
                   {"witness", opt(r.witness)}});
  }
  return {{"config",
           {{"N", {config.n_min, config.n_max}},
            {"nmax", config.nmax},
            {"suites", std::vector<std::string>(config.suites.begin(), config.suites.end())}}},
          {"conventions",
           {{"lie_derivative", "(L_X w)^ij = X(w^ij) - (d_k X^i) w^kj - (d_k X^j) w^ik"},
            {"hierarchy",
             "w_2 = -1/2 L_{X_1} w_1; w_3 = -L_{X_1} w_2; w_n = -L_{X_{n-m}} w_m / (n-2m+2), "
             "m = 2 (n even), m = 3 (n odd)"},
            {"master_fields", "X_n = [X_1, X_{n-1}] / (n-2) for n >= 3"}}},
          {"checks", arr},
          {"summary",
           {{"total", checks.size()},
            {"exact_pass", count(CheckStatus::ExactPass)},
            {"pass_mod_equivalence", count(CheckStatus::ModEquivalence)},
            {"fail", count(CheckStatus::Fail)}}}};
}

void Report::write_table(std::ostream& os) const {
  const auto idx = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
  std::size_t width = 10;
  for (const auto& r : checks) width = std::max(width, r.identity.size() + 2);
  const int iw = static_cast<int>(width);
  os << std::left << std::setw(13) << "suite" << std::setw(iw) << "identity" << std::setw(3) << "N"
     << std::setw(4) << "n" << std::setw(4) << "l" << std::setw(4) << "m" << std::setw(22)
     << "status"
     << "detail\n";
  for (const auto& r : checks) {
    std::string detail;
    if (r.k) detail = "k = " + *r.k;
    if (r.witness) detail += (detail.empty() ? "" : "; ") + *r.witness;
    os << std::left << std::setw(13) << r.suite << std::setw(iw) << r.identity << std::setw(3) << r.N
       << std::setw(4) << idx(r.n) << std::setw(4) << idx(r.l) << std::setw(4) << idx(r.m)
       << std::setw(22) << to_string(r.status) << detail << "\n";
  }
  os << checks.size() << " checks: " << count(CheckStatus::ExactPass) << " exact-pass, "
     << count(CheckStatus::ModEquivalence) << " pass-mod-equivalence, " << count(CheckStatus::Fail)
     << " fail\n";
}

// ---------------------------------------------------------------------------

namespace {

struct Task {
  CheckRecord record;
  std::function<void(CheckRecord&)> run;
};

void settle(CheckRecord& r, const std::optional<Witness>& w) {
  r.status = w ? CheckStatus::Fail : CheckStatus::ExactPass;
  if (w) r.witness = w->describe();
}

void expect_equal(CheckRecord& r, const VectorField& lhs, const VectorField& rhs) {
  settle(r, first_nonzero(lhs - rhs));
}

void expect_equal(CheckRecord& r, const Polynomial& lhs, const Polynomial& rhs) {
  const Polynomial d = lhs - rhs;
  settle(r, d.is_zero() ? std::nullopt : std::optional<Witness>(Witness{"difference", d}));
}

void expect_equal(CheckRecord& r, const PoissonTensor& lhs, const PoissonTensor& rhs) {
  settle(r, first_nonzero(lhs - rhs));
}

CheckRecord record(std::string suite, std::string identity, std::string anchor, int N,
                   std::optional<int> n = {}, std::optional<int> l = {},
                   std::optional<int> m = {}) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.identity = std::move(identity);
  r.anchor = std::move(anchor);
  r.N = N;
  r.n = n;
  r.l = l;
  r.m = m;
  return r;
}

void add_tasks(std::vector<Task>& tasks, const VerifyConfig& cfg, int N, Hierarchy& h) {
  const LatticeSize size(N);
  const auto on = [&](const char* s) { return cfg.suites.count(s) > 0; };

  if (on("poisson")) {
    for (int n = 1; n <= 3; ++n)
      tasks.push_back({record("poisson", "[w_n, w_n] = 0", "Schouten bracket of w_n with itself", N, n),
                       [&h, n](CheckRecord& r) { settle(r, schouten_self(h.w(n)).first_nonzero()); }});
  }
  if (on("involution")) {
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 4; ++m)
        for (int l = m + 1; l <= 4; ++l)
          tasks.push_back({record("involution", "{H_m, H_l}_n = 0", "H_m in involution under w_n", N,
                                  n, l, m),
                           [&h, n, m, l](CheckRecord& r) {
                             expect_equal(r, poisson_bracket(h.w(n), h.H(m), h.H(l)),
                                          Polynomial(h.size()));
                           }});
  }
  if (on("property-iii")) {
    for (int m = 2; m <= 5; ++m)
      tasks.push_back({record("property-iii", "X_-1(H_m) = (m-1) H_{m-1}",
                              "X_n(H_m) = (n+m) H_{n+m}, n = -1", N, -1, {}, m),
                       [&h, m](CheckRecord& r) {
                         expect_equal(r, apply(h.X(-1), h.H(m)), h.H(m - 1) * Rational(m - 1));
                       }});
    for (int n = 0; n <= cfg.nmax; ++n)
      for (int m = 1; m <= 4; ++m)
        tasks.push_back({record("property-iii", "X_n(H_m) = (n+m) H_{n+m}",
                                "X_n(H_m) = (n+m) H_{n+m}", N, n, {}, m),
                         [&h, n, m](CheckRecord& r) {
                           expect_equal(r, apply(h.X(n), h.H(m)), h.H(n + m) * Rational(n + m));
                         }});
  }
  if (on("property-iv")) {
    // L_{X_k} w_m = -(k - m + 2) w_{k+m} in the sign convention of the report.
    const std::vector<std::pair<int, int>> instances{{0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {2, 1}};
    for (const auto& [k, m] : instances)
      tasks.push_back(
          {record("property-iv", "L_{X_n} w_m = -(n-m+2) w_{n+m}",
                  "L_{X_n} w_m = (n-m+2) w_{n+m} up to the bracket sign convention", N, k, {}, m),
           [&h, k = k, m = m](CheckRecord& r) {
             const PoissonTensor rhs = (k == 0) ? h.w(m) * Rational(m - 2)
                                                : h.w(k + m) * Rational(-(k - m + 2));
             expect_equal(r, lie_derivative_tensor(h.X(k), h.w(m)), rhs);
           }});
  }
  if (on("brackets")) {
    for (int n = -1; n <= std::min(cfg.nmax, 3); ++n)
      for (int l = 1; l <= 4; ++l) {
        if (n + l < 1 && l != 1) continue;
        tasks.push_back({record("brackets", "[X_n, chi_l] = (l-1) chi_{n+l}",
                                "[X_n, chi_l] = (l-1) chi_{l+n}", N, n, l),
                         [&h, n, l](CheckRecord& r) {
                           const VectorField rhs = (n + l >= 1) ? h.chi(n + l) * Rational(l - 1)
                                                                : VectorField(h.size());
                           expect_equal(r, lie_bracket(h.X(n), h.chi(l)), rhs);
                         }});
      }
  }
  if (on("lenard")) {
    tasks.push_back({record("lenard", "w_1 grad H_1 = 0", "H_1 is a Casimir of w_1", N, 1, 1),
                     [&h](CheckRecord& r) { expect_equal(r, h.chi(1), VectorField(h.size())); }});
    tasks.push_back({record("lenard", "w_1 grad H_2 = Toda flow", "chi_2 generates the Toda flow", N,
                            1, 2),
                     [&h, size](CheckRecord& r) { expect_equal(r, h.chi(2), toda_rhs(size)); }});
    for (int n = 2; n <= 3; ++n)
      for (int l = 1; l <= 3; ++l)
        tasks.push_back({record("lenard", "w_n grad H_l = w_{n-1} grad H_{l+1}",
                                "M_n grad H_l = M_{n-1} grad H_{l+1}", N, n, l),
                         [&h, n, l](CheckRecord& r) {
                           expect_equal(r, h.chi(l, n), h.chi(l + 1, n - 1));
                         }});
  }
  if (on("theorem")) {
    for (int n = -1; n <= cfg.nmax; ++n) {
      tasks.push_back({record("theorem", "Y_n = X_n + t chi_{n+2}: determining equations",
                              "X_n + t chi_{n+2} is a symmetry", N, n),
                       [&h, n](CheckRecord& r) {
                         settle(r, determining_residuals(build_Y(n, h)).first_nonzero());
                       }});
      tasks.push_back({record("theorem", "dY_n/dt + [chi_2, Y_n] = 0",
                              "X_n + t chi_{n+2} is a symmetry", N, n),
                       [&h, n](CheckRecord& r) {
                         settle(r, first_nonzero(evolution_defect(build_Y(n, h).field(), h.chi(2))));
                       }});
    }
  }
  if (on("known")) {
    for (const auto& ks : known_symmetries(size))
      tasks.push_back({record("known", "determining equations: " + ks.name,
                              "closed-form solutions of the determining equations", N),
                       [c = ks.candidate](CheckRecord& r) {
                         settle(r, determining_residuals(c).first_nonzero());
                       }});
    // A planted non-symmetry must be rejected.
    tasks.push_back({record("known", "planted non-symmetry psi_1 = b_1 rejected",
                            "must-fail guard for the determining equations", N),
                     [size](CheckRecord& r) {
                       SymmetryCandidate c{Polynomial(size),
                                           std::vector<Polynomial>(static_cast<std::size_t>(size.num_a()),
                                                                   Polynomial(size)),
                                           std::vector<Polynomial>(static_cast<std::size_t>(size.num_b()),
                                                                   Polynomial(size))};
                       c.psi[0] = b_var(size, 1);
                       const auto w = determining_residuals(c).first_nonzero();
                       r.status = w ? CheckStatus::ExactPass : CheckStatus::Fail;
                       if (w) r.witness = "rejected at " + w->describe();
                     }});
  }
  if (on("equivalence")) {
    for (int i = 0; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j)
        tasks.push_back({record("equivalence", "[X_i, X_j] = (j-i) X_{i+j} + k chi_{i+j+1}",
                                "[X_i, X_j] equivalent to (j-i) X_{i+j}", N, i, j),
                         [&h, i, j](CheckRecord& r) {
                           const VectorField lhs = lie_bracket(h.X(i), h.X(j));
                           const VectorField rhs = h.X(i + j) * Rational(j - i);
                           const auto k = equivalent_mod_field(lhs, rhs, h.chi(i + j + 1));
                           if (!k) {
                             settle(r, first_nonzero(lhs - rhs));
                             return;
                           }
                           r.k = format_rational(*k);
                           r.status = (*k == 0) ? CheckStatus::ExactPass : CheckStatus::ModEquivalence;
                         }});
  }
}

}  // namespace

Report run_verify(const VerifyConfig& config) {
  config.validate();
  std::vector<std::unique_ptr<Hierarchy>> hierarchies;
  std::vector<Task> tasks;
  for (int N = config.n_min; N <= config.n_max; ++N) {
    hierarchies.push_back(std::make_unique<Hierarchy>(LatticeSize(N)));
    add_tasks(tasks, config, N, *hierarchies.back());
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      auto& t = tasks[i];
      try {
        t.run(t.record);
      } catch (const std::exception& e) {
        t.record.status = CheckStatus::Fail;
        t.record.witness = std::string("exception: ") + e.what();
      }
    }
  };
  unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  }

  Report rep{config, {}};
  rep.checks.reserve(tasks.size());
  for (auto& t : tasks) rep.checks.push_back(std::move(t.record));
  return rep;
}

}  // namespace toda
