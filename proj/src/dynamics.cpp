#include "toda/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace toda {

CompiledField::CompiledField(const VectorField& v) : size_(v.size()), dim_(v.dim()) {
  const int t_slot = size_.dim();
  comps_.resize(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    for (const auto& term : v[i].terms()) {
      Term ct{term.coeff.get_d(), term.mono.exponent(t_slot), {}};
      for (int s = 0; s < t_slot; ++s)
        if (const int e = term.mono.exponent(s); e > 0) ct.factors.push_back({s, e});
      comps_[static_cast<std::size_t>(i)].push_back(std::move(ct));
    }
  }
}

void CompiledField::eval(std::span<const double> z, double t, std::span<double> out) const {
  for (int i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (const auto& term : comps_[static_cast<std::size_t>(i)]) {
      double v = term.coeff;
      for (int k = 0; k < term.time_exponent; ++k) v *= t;
      for (const auto& f : term.factors) {
        const double x = z[static_cast<std::size_t>(f.slot)];
        for (int k = 0; k < f.exponent; ++k) v *= x;
      }
      s += v;
    }
    out[static_cast<std::size_t>(i)] = s;
  }
}

std::vector<double> CompiledField::eval(std::span<const double> z, double t) const {
  std::vector<double> out(static_cast<std::size_t>(dim_));
  eval(z, t, out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_state(const std::vector<double>& z, const std::vector<double>& z0, int num_a, double t,
                 bool guard_a) {
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (!std::isfinite(z[k])) {
      std::ostringstream os;
      os << "non-finite state component " << k << " at t=" << t << " (step too large?)";
      throw std::runtime_error(os.str());
    }
  }
  if (!guard_a) return;
  for (int i = 0; i < num_a; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (z0[k] != 0.0 && (z[k] == 0.0 || std::signbit(z[k]) != std::signbit(z0[k]))) {
      std::ostringstream os;
      os << "a" << (i + 1) << " changed sign at t=" << t << " (dt too large)";
      throw std::runtime_error(os.str());
    }
  }
}

}  // namespace

Trajectory integrate(const PhasePoint& z0, double t_end, double dt, const CompiledField& field,
                     const IntegrateOptions& opts) {
  const LatticeSize size = z0.lattice();
  if (!(size == field.size())) throw std::invalid_argument("field and initial point sizes differ");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
  if (opts.sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
  if (!z0.is_finite()) throw std::invalid_argument("initial point is not finite");

  const long steps = std::lround(t_end / dt);
  const std::size_t d = static_cast<std::size_t>(size.dim());
  const std::vector<double> start = z0.state();
  std::vector<double> z = start;
  std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);

  Trajectory traj;
  traj.step = dt;
  traj.times.push_back(z0.t);
  traj.samples.push_back(z0);

  double t = z0.t;
  for (long s = 1; s <= steps; ++s) {
    field.eval(z, t, k1);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = z[i] + 0.5 * dt * k1[i];
    field.eval(tmp, t + 0.5 * dt, k2);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = z[i] + 0.5 * dt * k2[i];
    field.eval(tmp, t + 0.5 * dt, k3);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = z[i] + dt * k3[i];
    field.eval(tmp, t + dt, k4);
    for (std::size_t i = 0; i < d; ++i) z[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t = z0.t + static_cast<double>(s) * dt;
    check_state(z, start, size.num_a(), t, opts.guard_a_sign);
    if (s % opts.sample_every == 0 || s == steps) {
      traj.times.push_back(t);
      traj.samples.push_back(PhasePoint::from_state(size, z, t));
    }
  }
  return traj;
}

Trajectory integrate(const PhasePoint& z0, double t_end, double dt, const IntegrateOptions& opts) {
  const CompiledField rhs(toda_rhs(z0.lattice()));
  return integrate(z0, t_end, dt, rhs, opts);
}

// ---------------------------------------------------------------------------

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const std::size_t n = d.size();
  if (n == 0) return {};
  if (e.size() + 1 != n) throw std::invalid_argument("offdiagonal must have n-1 entries");
  e.push_back(0.0);

  // Implicit QL with Wilkinson shift, eigenvalues only.
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("tridiagonal QL failed to converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      std::size_t i = m;
      bool deflated = false;
      while (i-- > l) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> spectrum(const PhasePoint& point) {
  point.lattice();
  return tridiagonal_eigenvalues(point.b, point.a);
}

double hamiltonian_value_spectral(const PhasePoint& point, int n) {
  if (n < 1) throw std::invalid_argument("H_n needs n >= 1");
  double s = 0.0;
  for (double lam : spectrum(point)) s += std::pow(lam, n);
  return s / n;
}

double DriftReport::max_h_drift() const {
  double m = 0.0;
  for (double x : h_drift) m = std::max(m, x);
  return m;
}

DriftReport drift_report(const Trajectory& traj, int n_max) {
  if (traj.samples.empty()) throw std::invalid_argument("empty trajectory");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  DriftReport rep;
  rep.h_drift.assign(static_cast<std::size_t>(n_max), 0.0);
  const PhasePoint& first = traj.samples.front();
  const std::vector<double> lam0 = spectrum(first);
  std::vector<double> h0;
  for (int n = 1; n <= n_max; ++n) h0.push_back(hamiltonian_value(first, n));

  for (const auto& p : traj.samples) {
    const std::vector<double> lam = spectrum(p);
    for (std::size_t i = 0; i < lam.size(); ++i)
      rep.eigenvalue_drift = std::max(rep.eigenvalue_drift, std::fabs(lam[i] - lam0[i]));
    for (int n = 1; n <= n_max; ++n) {
      auto& slot = rep.h_drift[static_cast<std::size_t>(n - 1)];
      slot = std::max(slot, std::fabs(hamiltonian_value(p, n) - h0[static_cast<std::size_t>(n - 1)]));
    }
  }
  return rep;
}

double step_halving_ratio(const PhasePoint& z0, double t_end, double dt) {
  IntegrateOptions opts;
  opts.sample_every = std::numeric_limits<int>::max();
  const auto z1 = integrate(z0, t_end, dt, opts).back().state();
  const auto z2 = integrate(z0, t_end, dt / 2, opts).back().state();
  const auto z4 = integrate(z0, t_end, dt / 4, opts).back().state();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < z1.size(); ++i) {
    num = std::max(num, std::fabs(z1[i] - z2[i]));
    den = std::max(den, std::fabs(z2[i] - z4[i]));
  }
  return num / den;
}

// ---------------------------------------------------------------------------

double symmetry_map_defect(const CompiledField& y, const PhasePoint& z0, double eps,
                           const SymmetryMapOptions& opts) {
  const LatticeSize size = z0.lattice();
  const Trajectory traj = integrate(z0, opts.t_end, opts.dt);
  const std::size_t count = traj.samples.size();
  if (count < 5) throw std::invalid_argument("symmetry map test needs at least 5 samples");
  const std::size_t d = static_cast<std::size_t>(size.dim());
  const CompiledField rhs(toda_rhs(size));

  std::vector<std::vector<double>> plain(count), moved(count);
  for (std::size_t k = 0; k < count; ++k) {
    plain[k] = traj.samples[k].state();
    const auto shift = y.eval(plain[k], traj.times[k]);
    moved[k] = plain[k];
    for (std::size_t i = 0; i < d; ++i) moved[k][i] += eps * shift[i];
  }

  const double h = opts.dt;
  const auto deriv = [&](const std::vector<std::vector<double>>& c, std::size_t k, std::size_t i) {
    return (-c[k + 2][i] + 8.0 * c[k + 1][i] - 8.0 * c[k - 1][i] + c[k - 2][i]) / (12.0 * h);
  };

  double defect = 0.0;
  std::vector<double> f_plain(d), f_moved(d);
  for (std::size_t k = 2; k + 2 < count; ++k) {
    rhs.eval(plain[k], traj.times[k], f_plain);
    rhs.eval(moved[k], traj.times[k], f_moved);
    for (std::size_t i = 0; i < d; ++i) {
      const double r_moved = deriv(moved, k, i) - f_moved[i];
      const double r_plain = deriv(plain, k, i) - f_plain[i];
      defect = std::max(defect, std::fabs(r_moved - r_plain));
    }
  }
  return defect;
}

std::vector<double> symmetry_map_orders(const CompiledField& y, const PhasePoint& z0,
                                        std::span<const double> eps,
                                        const SymmetryMapOptions& opts) {
  std::vector<double> defects;
  for (double e : eps) defects.push_back(symmetry_map_defect(y, z0, e, opts));
  std::vector<double> orders;
  for (std::size_t k = 0; k + 1 < defects.size(); ++k)
    orders.push_back(std::log2(defects[k] / defects[k + 1]) / std::log2(eps[k] / eps[k + 1]));
  return orders;
}

PhasePoint random_phase_point(int n, std::uint64_t seed) {
  const LatticeSize size(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PhasePoint p;
  for (int i = 0; i < size.num_a(); ++i) p.a.push_back(1.0 - unit(rng));
  for (int i = 0; i < size.num_b(); ++i) p.b.push_back(2.0 * unit(rng) - 1.0);
  return p;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.samples.empty()) return;
  const LatticeSize size = traj.samples.front().lattice();
  os << "t";
  for (int i = 1; i <= size.num_a(); ++i) os << ",a" << i;
  for (int i = 1; i <= size.num_b(); ++i) os << ",b" << i;
  os << "\n";
  const auto old_flags = os.flags();
  const auto old_prec = os.precision();
  os << std::setprecision(17);
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    os << traj.times[k];
    for (double x : traj.samples[k].a) os << "," << x;
    for (double x : traj.samples[k].b) os << "," << x;
    os << "\n";
  }
  os.flags(old_flags);
  os.precision(old_prec);
}

}  // namespace toda
