// Command-line front end: verify, simulate, hierarchy, symcheck.
//
// Exit codes: 0 success, 1 identity or threshold failure, 2 usage or parse
// error. Defaults can be set through TODA_N, TODA_NMAX, TODA_TEND, TODA_DT,
// TODA_EPS and TODA_TOL; command-line flags take precedence.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "toda/dynamics.hpp"
#include "toda/geometry.hpp"
#include "toda/json_io.hpp"
#include "toda/symmetry.hpp"
#include "toda/toda_core.hpp"
#include "toda/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The single source of defaults for every subcommand.
struct Settings {
  int n = 3;
  int nmax = 4;
  double tend = 10.0;
  double dt = 1e-3;
  double eps = 1e-4;
  double tol = 1e-8;
  bool assert_thresholds = false;
  bool json_output = false;
  std::string out;
  std::string input;
};

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------

int cmd_verify(const Settings& s, const std::string& config_path, bool n_given, bool nmax_given,
               int threads) {
  toda::VerifyConfig cfg;
  try {
    if (!config_path.empty()) cfg = toda::verify_config_from_json(read_json(config_path), cfg);
    if (n_given) cfg.n_min = cfg.n_max = s.n;
    if (nmax_given) cfg.nmax = s.nmax;
    if (threads >= 0) cfg.threads = threads;
    if (!s.out.empty()) cfg.out = s.out;
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }

  const toda::Report rep = toda::run_verify(cfg);
  const std::string doc = rep.to_json().dump(2) + "\n";
  if (!cfg.out.empty()) write_text(cfg.out, doc);
  if (s.json_output) {
    std::cout << doc;
  } else {
    rep.write_table(std::cout);
  }
  return rep.passed() ? 0 : kExitFail;
}

int cmd_simulate(const Settings& s, bool random, std::uint64_t seed, int hmax, int every,
                 int symmetry_n) {
  toda::PhasePoint z0;
  if (random) {
    if (!s.input.empty()) throw UsageError("--input and --random are exclusive");
    if (s.n < 2) throw UsageError("--n must be >= 2");
    z0 = toda::random_phase_point(s.n, seed);
  } else {
    if (s.input.empty()) throw UsageError("simulate needs --input FILE or --random");
    try {
      z0 = toda::json::phase_point_from_json(read_json(s.input));
    } catch (const toda::json::ParseError& e) {
      throw UsageError(std::string("bad phase point: ") + e.what());
    }
  }
  if (!(s.dt > 0.0) || !(s.tend >= 0.0)) throw UsageError("--dt must be > 0 and --tend >= 0");
  if (every < 1) throw UsageError("--every must be >= 1");
  const int N = z0.lattice().n();
  if (hmax < 1) hmax = N;

  toda::IntegrateOptions opts;
  opts.sample_every = every;
  toda::Trajectory traj;
  try {
    traj = toda::integrate(z0, s.tend, s.dt, opts);
  } catch (const std::runtime_error& e) {
    std::cerr << "integration aborted: " << e.what() << "\n";
    return kExitFail;
  }
  if (!s.out.empty()) {
    std::ofstream csv(s.out);
    if (!csv) throw UsageError("cannot write " + s.out);
    toda::write_trajectory_csv(csv, traj);
  }

  const toda::DriftReport drift = toda::drift_report(traj, hmax);
  json doc = toda::json::to_json(drift);
  doc["N"] = N;
  doc["t_end"] = s.tend;
  doc["dt"] = s.dt;
  doc["integrator"] = traj.integrator;
  doc["initial"] = toda::json::to_json(z0);
  doc["final"] = toda::json::to_json(traj.back());
  bool ok = drift.eigenvalue_drift <= s.tol && drift.max_h_drift() <= s.tol;

  if (symmetry_n >= -1) {
    if (N > toda::LatticeSize::kMaxSymbolic) throw UsageError("--symmetry needs N <= 16");
    const auto y = toda::build_Y(symmetry_n, toda::LatticeSize(N));
    const toda::CompiledField field(y.field());
    const double d1 = toda::symmetry_map_defect(field, z0, s.eps, {2.0, s.dt});
    const double d2 = toda::symmetry_map_defect(field, z0, s.eps / 2, {2.0, s.dt});
    const double order = std::log2(d1 / d2);
    doc["symmetry"] = {{"n", symmetry_n}, {"eps", s.eps}, {"defect", d1}, {"defect_half", d2},
                       {"order", order}};
  }

  std::cout << doc.dump(2) << "\n";
  if (s.assert_thresholds && !ok) {
    std::cerr << "drift exceeds tolerance " << s.tol << "\n";
    return kExitFail;
  }
  return 0;
}

int cmd_hierarchy(const Settings& s) {
  if (s.n < 2 || s.n > toda::LatticeSize::kMaxSymbolic) throw UsageError("--n must be in [2, 16]");
  if (s.nmax < 1) throw UsageError("--nmax must be >= 1");
  toda::Hierarchy h{toda::LatticeSize(s.n)};
  json hs = json::array();
  json xs = json::array();
  json ws = json::array();
  for (int n = 1; n <= s.nmax + 1; ++n)
    hs.push_back({{"n", n}, {"value", toda::json::to_json(h.H(n))}});
  for (int n = -1; n <= s.nmax; ++n)
    xs.push_back({{"n", n}, {"value", toda::json::to_json(h.X(n))}});
  for (int n = 1; n <= s.nmax; ++n)
    ws.push_back({{"n", n}, {"value", toda::json::to_json(h.w(n))}});
  const json doc = {{"N", s.n}, {"nmax", s.nmax}, {"H", hs}, {"X", xs}, {"w", ws}};
  const std::string text = doc.dump(2) + "\n";
  if (s.out.empty()) {
    std::cout << text;
  } else {
    write_text(s.out, text);
  }
  return 0;
}

int cmd_symcheck(const Settings& s, bool all) {
  if (s.input.empty()) throw UsageError("symcheck needs --input FILE (or - for stdin)");
  const toda::SymmetryCandidate c = [&] {
    try {
      return toda::json::candidate_from_json(read_json(s.input));
    } catch (const toda::json::ParseError& e) {
      throw UsageError(std::string("bad candidate: ") + e.what());
    }
  }();
  const toda::DeterminingResidual r = toda::determining_residuals(c);
  const auto w = r.first_nonzero();
  if (s.json_output) {
    std::cout << toda::json::to_json(r).dump(2) << "\n";
  } else if (all) {
    for (std::size_t j = 0; j < r.gamma.size(); ++j)
      std::cout << "Gamma_" << j + 1 << " = " << r.gamma[j] << "\n";
    for (std::size_t j = 0; j < r.delta.size(); ++j)
      std::cout << "Delta_" << j + 1 << " = " << r.delta[j] << "\n";
  }
  std::ostream& verdict = s.json_output ? std::cerr : std::cout;
  if (w) {
    verdict << "not a symmetry: " << w->location << " = " << w->value << "\n";
    return kExitFail;
  }
  verdict << "symmetry: all determining residuals vanish\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical checks for the finite non-periodic Toda lattice"};
  app.require_subcommand(1);
  Settings s;

  const auto add_n = [&](CLI::App* sub) {
    return sub->add_option("--n", s.n, "lattice size N")->envname("TODA_N");
  };
  const auto add_nmax = [&](CLI::App* sub) {
    return sub->add_option("--nmax", s.nmax, "highest hierarchy index")->envname("TODA_NMAX");
  };

  auto* verify = app.add_subcommand("verify", "run the exact identity suites");
  std::string config_path;
  int threads = -1;
  verify->add_option("--config", config_path, "JSON config file");
  auto* verify_n = add_n(verify);
  auto* verify_nmax = add_nmax(verify);
  verify->add_option("--threads", threads, "worker threads (0 = all cores)");
  verify->add_option("--out", s.out, "write the JSON report here");
  verify->add_flag("--json", s.json_output, "print JSON instead of a table");

  auto* simulate = app.add_subcommand("simulate", "integrate the Toda flow and report drift");
  bool random = false;
  std::uint64_t seed = 1;
  int hmax = 0;
  int every = 1;
  int symmetry_n = -2;
  simulate->add_option("--input", s.input, "initial point JSON ({a,b,t} or {q,p})");
  simulate->add_flag("--random", random, "random initial point of size --n");
  simulate->add_option("--seed", seed, "seed for --random");
  add_n(simulate);
  simulate->add_option("--tend", s.tend, "final time")->envname("TODA_TEND");
  simulate->add_option("--dt", s.dt, "step size")->envname("TODA_DT");
  simulate->add_option("--eps", s.eps, "perturbation size for --symmetry")->envname("TODA_EPS");
  simulate->add_option("--tol", s.tol, "drift tolerance")->envname("TODA_TOL");
  simulate->add_option("--hmax", hmax, "highest H_n in the drift report (default N)");
  simulate->add_option("--every", every, "keep every k-th step in the CSV");
  simulate->add_option("--symmetry", symmetry_n, "also run the symmetry map test for Y_n");
  simulate->add_flag("--assert", s.assert_thresholds, "exit 1 when drift exceeds --tol");
  simulate->add_option("--out", s.out, "trajectory CSV path");

  auto* hierarchy = app.add_subcommand("hierarchy", "emit H_n, X_n and w_n as JSON");
  add_n(hierarchy);
  add_nmax(hierarchy);
  hierarchy->add_option("--out", s.out, "output path (default stdout)");

  auto* symcheck = app.add_subcommand("symcheck", "test a candidate against the determining equations");
  bool all = false;
  symcheck->add_option("--input", s.input, "candidate JSON ({tau, phi, psi}); - for stdin");
  symcheck->add_flag("--all", all, "print every residual");
  symcheck->add_flag("--json", s.json_output, "print residuals as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify)
      return cmd_verify(s, config_path, verify_n->count() > 0 || std::getenv("TODA_N"),
                        verify_nmax->count() > 0 || std::getenv("TODA_NMAX"), threads);
    if (*simulate) return cmd_simulate(s, random, seed, hmax, every, symmetry_n);
    if (*hierarchy) return cmd_hierarchy(s);
    if (*symcheck) return cmd_symcheck(s, all);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
