#pragma once

// Numerical integration of polynomial vector fields on Flaschka phase space,
// spectra of the Jacobi matrix, and drift diagnostics.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "toda/fields.hpp"
#include "toda/toda_core.hpp"

namespace toda {

/// A vector field flattened to term lists for fast floating-point
/// evaluation. May depend on t.
class CompiledField {
 public:
  explicit CompiledField(const VectorField& v);

  int dim() const { return dim_; }
  LatticeSize size() const { return size_; }
  /// out[i] = V^i(z, t); out must have dim() entries.
  void eval(std::span<const double> z, double t, std::span<double> out) const;
  std::vector<double> eval(std::span<const double> z, double t) const;

 private:
  struct Factor {
    int slot;
    int exponent;
  };
  struct Term {
    double coeff;
    int time_exponent;
    std::vector<Factor> factors;
  };

  LatticeSize size_;
  int dim_;
  std::vector<std::vector<Term>> comps_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> samples;
  double step = 0.0;
  std::string integrator = "rk4";

  const PhasePoint& back() const { return samples.back(); }
};

struct IntegrateOptions {
  /// Keep every k-th step (the final state is always kept).
  int sample_every = 1;
  /// Abort when an a_i that started nonzero reaches zero or changes sign.
  bool guard_a_sign = true;
};

/// Classical fourth-order Runge-Kutta with fixed step. The number of steps is
/// round(t_end / dt). Throws std::invalid_argument on bad arguments and
/// std::runtime_error on a non-finite state or an a_i sign change.
Trajectory integrate(const PhasePoint& z0, double t_end, double dt, const CompiledField& field,
                     const IntegrateOptions& opts = {});
/// Same, along the Toda flow.
Trajectory integrate(const PhasePoint& z0, double t_end, double dt,
                     const IntegrateOptions& opts = {});

/// Eigenvalues of the symmetric tridiagonal matrix (implicit QL with Wilkinson
/// shifts), ascending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag);
std::vector<double> spectrum(const PhasePoint& point);

/// H_n from the spectrum: sum lambda^n / n.
double hamiltonian_value_spectral(const PhasePoint& point, int n);

struct DriftReport {
  double eigenvalue_drift = 0.0;
  /// h_drift[n-1] = max_t |H_n(t) - H_n(0)|.
  std::vector<double> h_drift;

  double max_h_drift() const;
};

/// Drifts against the first sample, H_n for n = 1..n_max.
DriftReport drift_report(const Trajectory& traj, int n_max);

/// Ratio |z_dt - z_{dt/2}| / |z_{dt/2} - z_{dt/4}| of final states in the max
/// norm along the Toda flow. About 16 for a fourth-order method.
double step_halving_ratio(const PhasePoint& z0, double t_end, double dt);

struct SymmetryMapOptions {
  double t_end = 2.0;
  double dt = 1e-3;
};

/// Perturbs a numerical Toda solution z(t) by eps Y(z(t), t) and measures the
/// largest violation of the Toda equations by the perturbed curve, using a
/// fourth-order central difference for d/dt. The violation of the unperturbed
/// curve (pure discretisation error) is subtracted sample by sample, so the
/// result is O(eps^2) when Y is a symmetry and O(eps) otherwise.
double symmetry_map_defect(const CompiledField& y, const PhasePoint& z0, double eps,
                           const SymmetryMapOptions& opts = {});

/// Observed orders log2(d(eps_k) / d(eps_{k+1})) for a halving sequence.
std::vector<double> symmetry_map_orders(const CompiledField& y, const PhasePoint& z0,
                                        std::span<const double> eps,
                                        const SymmetryMapOptions& opts = {});

/// b_i uniform in [-1, 1], a_i uniform in (0, 1], t = 0 (mt19937_64).
PhasePoint random_phase_point(int n, std::uint64_t seed);

/// Header t,a1..a{N-1},b1..bN then one row per sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace toda
