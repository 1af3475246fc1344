// Acceptance run: one PASS/FAIL line per criterion. Exit status is 0 iff
// every criterion matches its expectation (criteria named with
// --expect-fail must fail, all others must pass).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toda/dynamics.hpp"
#include "toda/geometry.hpp"
#include "toda/symmetry.hpp"
#include "toda/toda_core.hpp"

using namespace toda;

namespace {

// Tolerances.
constexpr double kDriftTol = 1e-8;
constexpr double kRatioLo = 12.8;
constexpr double kRatioHi = 19.2;
constexpr double kSymOrderLo = 1.7;
constexpr double kSymOrderHi = 2.3;
constexpr double kPlantedOrderLo = 0.7;
constexpr double kPlantedOrderHi = 1.3;
constexpr double kTranslationDefect = 1e-10;
constexpr double kNumericsBudget = 60.0;
constexpr double kTranscriptionBudget = 1.0;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
};

// Printed component formulas instantiated at N = 2 and N = 3, slot order
// a_1..a_{N-1}, b_1..b_N.
struct Printed {
  int n;
  std::vector<const char*> x1, x2, y1;
};

const Printed kPrinted[] = {
    {2,
     {"-a1*b1 + 3*a1*b2", "5*a1^2 + b1^2", "-3*a1^2 + b2^2"},
     {"a1^3 + a1*b1*b2 + 2*a1*b2^2", "4*a1^2*b1 + 3*a1^2*b2 + b1^3", "-a1^2*b1 + b2^3"},
     {"-a1*b1^2*t - a1*b1 + a1*b2^2*t + 3*a1*b2", "2*a1^2*b2*t + 2*a1^2*t + 5*a1^2 + b1^2",
      "-2*a1^2*b2*t - 3*a1^2 + b2^2"}},
    {3,
     {"-a1*b1 + 3*a1*b2", "-2*a2*b2 + 4*a2*b3", "5*a1^2 + b1^2", "-3*a1^2 + 7*a2^2 + b2^2",
      "-5*a2^2 + b3^2"},
     {"a1^3 + 2*a1*a2^2 + a1*b1*b2 + 2*a1*b2^2",
      "a2^3 - a2*b1*b2 + a2*b1*b3 - a2*b2^2 + a2*b2*b3 + 3*a2*b3^2",
      "4*a1^2*b1 + 3*a1^2*b2 + b1^3", "-a1^2*b1 + 2*a2^2*b1 + 6*a2^2*b2 + 5*a2^2*b3 + b2^3",
      "-2*a2^2*b1 - 3*a2^2*b2 - 2*a2^2*b3 + b3^3"},
     {"a1*a2^2*t - a1*b1^2*t - a1*b1 + a1*b2^2*t + 3*a1*b2",
      "-a1^2*a2*t - a2*b2^2*t - 2*a2*b2 + a2*b3^2*t + 4*a2*b3",
      "2*a1^2*b2*t + 2*a1^2*t + 5*a1^2 + b1^2",
      "-2*a1^2*a2*t - 2*a1^2*b2*t - 3*a1^2 + 2*a2^2*b3*t + 2*a2^2*t + 7*a2^2 + b2^2",
      "-2*a2^2*b3*t - 5*a2^2 + b3^2"}},
};

VectorField field_of(LatticeSize size, const std::vector<const char*>& comps) {
  std::vector<Polynomial> out;
  for (const char* c : comps) out.push_back(parse_polynomial(c, size));
  return VectorField(size, std::move(out));
}

std::string diff_note(const VectorField& got, const VectorField& want) {
  for (int k = 0; k < got.dim(); ++k) {
    if (got[k] != want[k])
      return coordinate_name(got.size(), k) + ": computed " + got[k].to_string() + ", printed " +
             want[k].to_string();
  }
  return "";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  bool x_ok = true;
  for (const Printed& p : kPrinted) {
    const LatticeSize size(p.n);
    Hierarchy h(size);
    const std::string at = " at N=" + std::to_string(p.n);
    for (int n = 1; n <= 2; ++n) {
      const VectorField printed = field_of(size, n == 1 ? p.x1 : p.x2);
      const bool ok = h.X(n) == printed;
      x_ok = x_ok && ok;
      o.require(ok, "X_" + std::to_string(n) + at + " (" + diff_note(h.X(n), printed) + ")");
    }
    const SymmetryCandidate y1 = build_Y(1, h);
    const VectorField printed = field_of(size, p.y1);
    o.require(y1.tau.is_zero(), "Y_1 tau" + at);
    o.require(y1.field() == printed, "Y_1" + at + " (" + diff_note(y1.field(), printed) + ")");
  }
  if (x_ok) o.notes.push_back("X_1 and X_2 match the printed forms at N=2,3");
  const double dt = seconds_since(t0);
  o.require(dt < kTranscriptionBudget, "runtime budget");
  o.notes.push_back("runtime " + std::to_string(dt) + " s");
  return o;
}

bool property_iii(Hierarchy& h, int n, int m) {
  const Polynomial lhs = apply(h.X(n), h.H(m));
  if (n + m == 0) return lhs.is_zero();
  return lhs == h.H(n + m) * Rational(n + m);
}

Outcome criterion2() {
  Outcome o;
  int count = 0;
  for (int N = 2; N <= 5; ++N) {
    Hierarchy h{LatticeSize(N)};
    for (int n = 0; n <= 4; ++n)
      for (int m = 1; m <= 4; ++m, ++count)
        o.require(property_iii(h, n, m),
                  "X_" + std::to_string(n) + "(H_" + std::to_string(m) + ") at N=" + std::to_string(N));
    for (int m = 2; m <= 5; ++m, ++count)
      o.require(property_iii(h, -1, m), "X_-1(H_" + std::to_string(m) + ") at N=" + std::to_string(N));
  }
  o.notes.push_back(std::to_string(count) + " identities");
  return o;
}

Outcome criterion3() {
  Outcome o;
  int count = 0;
  for (int N = 2; N <= 4; ++N) {
    for (const TheoremCase& tc : verify_theorem(3, LatticeSize(N))) {
      ++count;
      const std::string at = "Y_" + std::to_string(tc.n) + " at N=" + std::to_string(N);
      o.require(tc.residuals_vanish, at + " determining equations");
      o.require(tc.evolution_vanishes, at + " evolution defect");
    }
  }
  o.notes.push_back(std::to_string(count) + " fields, both routes");
  return o;
}

Outcome brackets(Hierarchy& h, int n_max) {
  Outcome o;
  for (const BracketCase& bc : bracket_relation_suite(h, 0, n_max, 4))
    o.require(bc.passed, "[X_" + std::to_string(bc.n) + ", chi_" + std::to_string(bc.l) + "]");
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (int N = 2; N <= 4; ++N) {
    Hierarchy h{LatticeSize(N)};
    const Outcome r = brackets(h, 3);
    o.require(r.pass, "bracket suite at N=" + std::to_string(N));
    for (const auto& n : r.notes) o.notes.push_back(n);
  }
  o.notes.push_back("n 0..3, l 1..4");
  return o;
}

Outcome poisson_suite(Hierarchy& h) {
  Outcome o;
  for (int n = 1; n <= 3; ++n) o.require(schouten_self(h.w(n)).is_zero(), "[w_" + std::to_string(n) + ", w_" + std::to_string(n) + "]");
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 4; ++m)
      for (int l = m + 1; l <= 4; ++l)
        o.require(poisson_bracket(h.w(n), h.H(m), h.H(l)).is_zero(),
                  "{H_" + std::to_string(m) + ", H_" + std::to_string(l) + "}_" + std::to_string(n));
  for (int n = 2; n <= 3; ++n)
    for (int l = 1; l <= 4; ++l)
      o.require(h.chi(l, n) == h.chi(l + 1, n - 1),
                "w_" + std::to_string(n) + " grad H_" + std::to_string(l));
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (int N = 2; N <= 4; ++N) {
    Hierarchy h{LatticeSize(N)};
    const Outcome r = poisson_suite(h);
    o.require(r.pass, "Poisson suite at N=" + std::to_string(N));
    for (const auto& n : r.notes) o.notes.push_back(n + " at N=" + std::to_string(N));
  }
  o.notes.push_back("Schouten n 1..3, involution m < l <= 4 and n <= 3, Lenard n 2..3 with l 1..4");
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (int N = 2; N <= 4; ++N) {
    Hierarchy h{LatticeSize(N)};
    std::ostringstream ks;
    ks << "N=" << N << ":";
    for (int i = 0; i <= 3; ++i) {
      for (int j = i + 1; j <= 3; ++j) {
        const VectorField lhs = lie_bracket(h.X(i), h.X(j));
        const VectorField rhs = h.X(i + j) * Rational(j - i);
        const auto k = equivalent_mod_field(lhs, rhs, h.chi(i + j + 1));
        o.require(k.has_value(), "[X_" + std::to_string(i) + ", X_" + std::to_string(j) + "] at N=" +
                                     std::to_string(N));
        ks << " k(" << i << "," << j << ")=" << (k ? k->get_str() : "none");
      }
    }
    o.notes.push_back(ks.str());
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_ev = 0.0;
  double worst_h = 0.0;
  for (int N = 3; N <= 8; ++N) {
    const PhasePoint z = random_phase_point(N, 7000 + static_cast<unsigned>(N));
    IntegrateOptions opts;
    opts.sample_every = 10;
    const DriftReport d = drift_report(integrate(z, 10.0, 1e-3, opts), N);
    worst_ev = std::max(worst_ev, d.eigenvalue_drift);
    worst_h = std::max(worst_h, d.max_h_drift());
    o.require(d.eigenvalue_drift < kDriftTol, "eigenvalue drift at N=" + std::to_string(N));
    o.require(d.max_h_drift() < kDriftTol, "H drift at N=" + std::to_string(N));
  }
  std::ostringstream drift;
  drift << "drift: eigenvalues " << worst_ev << ", H " << worst_h;
  o.notes.push_back(drift.str());

  std::ostringstream ratios;
  ratios << "step-halving ratios:";
  for (int N = 3; N <= 5; ++N) {
    const double r = step_halving_ratio(random_phase_point(N, 7100 + static_cast<unsigned>(N)), 5.0, 0.04);
    ratios << " " << r;
    o.require(r >= kRatioLo && r <= kRatioHi, "step-halving ratio at N=" + std::to_string(N));
  }
  o.notes.push_back(ratios.str());

  const double eps[] = {1e-3, 5e-4, 2.5e-4};
  std::ostringstream orders;
  orders << "orders:";
  for (int N = 3; N <= 4; ++N) {
    const LatticeSize size(N);
    Hierarchy h(size);
    const PhasePoint z = random_phase_point(N, 7200 + static_cast<unsigned>(N));
    const double defect = symmetry_map_defect(CompiledField(build_Y(-1, h).field()), z, eps[0]);
    o.require(defect <= kTranslationDefect, "Y_-1 defect at N=" + std::to_string(N));
    for (int n = 0; n <= 3; ++n) {
      for (double q : symmetry_map_orders(CompiledField(build_Y(n, h).field()), z, eps)) {
        orders << " Y" << n << "=" << q;
        o.require(q >= kSymOrderLo && q <= kSymOrderHi,
                  "Y_" + std::to_string(n) + " order at N=" + std::to_string(N));
      }
    }
    VectorField planted(size);
    planted[slot_of(size, Var::b(1))] = b_var(size, 1);
    for (double q : symmetry_map_orders(CompiledField(planted), z, eps)) {
      orders << " planted=" << q;
      o.require(q >= kPlantedOrderLo && q <= kPlantedOrderHi, "planted order at N=" + std::to_string(N));
    }
  }
  o.notes.push_back(orders.str());

  const double dt = seconds_since(t0);
  o.require(dt < kNumericsBudget, "runtime budget");
  o.notes.push_back("runtime " + std::to_string(dt) + " s");
  return o;
}

// True when the seeded hierarchy fails at least one of the property-iii,
// bracket or Poisson checks.
bool detected(LatticeSize size, const VectorField& x1, const PoissonTensor& w1) {
  Hierarchy h(size, x1, w1);
  for (int n = 0; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m)
      if (!property_iii(h, n, m)) return true;
  if (!brackets(h, 3).pass) return true;
  return !poisson_suite(h).pass;
}

Outcome criterion8() {
  Outcome o;
  const LatticeSize size(3);
  const VectorField x1 = master_X_explicit(1, size);
  const PoissonTensor w1 = linear_toda_tensor(size);
  int mutants = 0;
  for (int k = 0; k < x1.dim(); ++k) {
    for (const auto& term : x1[k].terms()) {
      VectorField bad = x1;
      bad[k] += Polynomial::monomial(size, term.mono, Rational(1));
      ++mutants;
      o.require(detected(size, bad, w1), "X_1 mutant in " + coordinate_name(size, k));
    }
  }
  for (int i = 0; i < w1.dim(); ++i) {
    for (int j = i + 1; j < w1.dim(); ++j) {
      for (const auto& term : w1(i, j).terms()) {
        PoissonTensor bad = w1;
        bad.set(i, j, w1(i, j) + Polynomial::monomial(size, term.mono, Rational(1)));
        ++mutants;
        o.require(detected(size, x1, bad),
                  "w_1 mutant at (" + coordinate_name(size, i) + ", " + coordinate_name(size, j) + ")");
      }
    }
  }
  o.notes.push_back(std::to_string(mutants) + " single-coefficient mutants at N=3");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance run"};
  std::set<int> expect_fail;
  app.add_option("--expect-fail", expect_fail, "criteria expected to fail")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8};
  bool as_expected = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = criteria[i]();
    const bool want_fail = expect_fail.count(id) > 0;
    std::printf("criterion %d: %s (%.2f s)%s\n", id, o.pass ? "PASS" : "FAIL", seconds_since(t0),
                want_fail ? " [expected FAIL]" : "");
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (o.pass == want_fail) as_expected = false;
  }
  std::printf("%s\n", as_expected ? "all criteria as expected" : "UNEXPECTED OUTCOME");
  return as_expected ? 0 : 1;
}
