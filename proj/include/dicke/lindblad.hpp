// Copyright 2026 The dicke Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dicke/analytic.hpp"
#include "dicke/qstate.hpp"

namespace dicke {

// ---------------------------------------------------------------------------
// Single-atom and collective operators

/// sigma_- = |-><+| on one atom, in the {|+>, |->} ordering.
inline Eigen::Matrix2cd atom_lowering() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(1, 0) = 1.0;
  return m;
}

inline Eigen::Matrix2cd atom_sigma_z() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

inline Matrix4 kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4 out;
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

inline Matrix4 lowering_a() { return kron(atom_lowering(), Eigen::Matrix2cd::Identity()); }
inline Matrix4 lowering_b() { return kron(Eigen::Matrix2cd::Identity(), atom_lowering()); }

/// Sigma_- = sigma_-^A + sigma_-^B.
inline Matrix4 collective_lowering() { return lowering_a() + lowering_b(); }

/// Sigma_z = sigma_z^A + sigma_z^B.
inline Matrix4 collective_sigma_z() {
  return kron(atom_sigma_z(), Eigen::Matrix2cd::Identity()) + kron(Eigen::Matrix2cd::Identity(), atom_sigma_z());
}

/// sigma_+^A sigma_-^B + sigma_+^B sigma_-^A; swaps |+-> and |-+>.
inline Matrix4 exchange_coupling() {
  const Matrix4 a = lowering_a();
  const Matrix4 b = lowering_b();
  return a.adjoint() * b + b.adjoint() * a;
}

/// Exchanges the two atoms.
inline Matrix4 swap_operator() {
  Matrix4 s = Matrix4::Zero();
  s(kUpUp, kUpUp) = 1.0;
  s(kUpDown, kDownUp) = 1.0;
  s(kDownUp, kUpDown) = 1.0;
  s(kDownDown, kDownDown) = 1.0;
  return s;
}

// ---------------------------------------------------------------------------
// Generator

/// Instantaneous kernel values: f_R (dissipative) and f_I (dispersive).
/// In the Markovian limit these are gamma_decay/2 and gamma_shift/2.
struct KernelRates {
  double real = 0.0;
  double imag = 0.0;
};

/// Collective generator
///
///   drho/dt = -i[H, rho] - k (S+S- rho + rho S+S- - 2 S- rho S+)
///
/// with H = (omega0 + f_I) Sigma_z / 2 + f_I (s+A s-B + s+B s-A) and k = f_R.
struct Generator {
  Matrix4 hamiltonian_eff;
  double jump_rate = 0.0;
  Matrix4 lowering;
  Matrix4 raising;
  Matrix4 number;  ///< raising * lowering

  Matrix4 apply(const Matrix4& rho) const {
    const Complex i(0.0, 1.0);
    const Matrix4 unitary = -i * (hamiltonian_eff * rho - rho * hamiltonian_eff);
    const Matrix4 dissipator = number * rho + rho * number - 2.0 * lowering * rho * raising;
    return unitary - jump_rate * dissipator;
  }
};

inline Generator build_generator(double omega0, KernelRates rates) {
  if (!(rates.real >= 0.0)) throw InvalidState("dissipative kernel rate must be >= 0");
  Generator g;
  g.hamiltonian_eff = 0.5 * (omega0 + rates.imag) * collective_sigma_z() + rates.imag * exchange_coupling();
  g.jump_rate = rates.real;
  g.lowering = collective_lowering();
  g.raising = g.lowering.adjoint();
  g.number = g.raising * g.lowering;
  return g;
}

inline Generator build_generator(const ModelParams& p) {
  p.check();
  return build_generator(p.omega0, {0.5 * p.gamma_decay, 0.5 * p.gamma_shift});
}

inline Matrix4 rhs(const DensityMatrix& rho, const Generator& g) { return g.apply(rho.matrix()); }

// ---------------------------------------------------------------------------
// Integration

/// Kernel values as a function of time. Defaults to the Markovian constants.
using RateSchedule = std::function<KernelRates(double)>;

inline RateSchedule markovian_schedule(const ModelParams& p) {
  const KernelRates rates{0.5 * p.gamma_decay, 0.5 * p.gamma_shift};
  return [rates](double) { return rates; };
}

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  ModelParams params;
  double step = 0.0;

  const DensityMatrix& final_state() const { return states.back(); }
};

/// Raised when a stored state fails validate() during integration.
class ValidityError : public std::runtime_error {
 public:
  ValidityError(double time, ValidityReport report)
      : std::runtime_error(describe(time, report)), time_(time), report_(report) {}

  double time() const { return time_; }
  const ValidityReport& report() const { return report_; }

 private:
  static std::string describe(double time, const ValidityReport& r) {
    std::ostringstream os;
    os << "state left the physical set at t=" << time << " (hermiticity defect " << r.hermiticity_defect
       << ", trace defect " << r.trace_defect << ", min eigenvalue " << r.min_eigenvalue
       << "); reduce the step";
    return os.str();
  }

  double time_;
  ValidityReport report_;
};

struct IntegrateOptions {
  /// Keep every n-th step in the trajectory (the final state is always kept).
  std::size_t store_every = 1;
  Tolerances tolerances{};
  /// Optional time-dependent kernel; when empty the Markovian constants of
  /// the ModelParams are used.
  RateSchedule schedule{};
};

namespace detail {

inline Matrix4 rk4_step(const Matrix4& rho, double h, const Generator& g0, const Generator& gm,
                        const Generator& g1) {
  const Matrix4 k1 = g0.apply(rho);
  const Matrix4 k2 = gm.apply(rho + 0.5 * h * k1);
  const Matrix4 k3 = gm.apply(rho + 0.5 * h * k2);
  const Matrix4 k4 = g1.apply(rho + h * k3);
  return hermitian_part(rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// Generators at the start, midpoint and end of a step. Constant kernels
/// are built once and reused.
class StepGenerators {
 public:
  StepGenerators(double omega0, RateSchedule schedule)
      : omega0_(omega0), schedule_(std::move(schedule)) {}
  StepGenerators(double omega0, const ModelParams& p)
      : omega0_(omega0), constant_(build_generator(p)) {}

  Matrix4 step(const Matrix4& rho, double t, double h) const {
    if (!schedule_) return rk4_step(rho, h, constant_, constant_, constant_);
    return rk4_step(rho, h, build_generator(omega0_, schedule_(t)),
                    build_generator(omega0_, schedule_(t + 0.5 * h)),
                    build_generator(omega0_, schedule_(t + h)));
  }

 private:
  double omega0_;
  RateSchedule schedule_{};
  Generator constant_{};
};

inline void check_state(double t, const Matrix4& m, const Tolerances& tol) {
  const ValidityReport report = validate(DensityMatrix(m), tol);
  if (!report.passed) throw ValidityError(t, report);
}

/// Number of uniform steps of size <= dt covering `span`.
inline std::size_t step_count(double span, double dt) {
  if (span <= 0.0) return 0;
  const double raw = span / dt;
  return static_cast<std::size_t>(std::ceil(raw - 1e-9 * raw));
}

}  // namespace detail

/// Fixed-step classical fourth-order Runge-Kutta over [0, t_end].
///
/// The step is shrunk to t_end / ceil(t_end / dt) so the grid lands on t_end.
/// Each step is re-hermitized; every stored state is validated and a failure
/// raises ValidityError. Positivity is never enforced.
inline Trajectory integrate(const DensityMatrix& rho0, const ModelParams& p, double t_end, double dt,
                            const IntegrateOptions& options = {}) {
  p.check();
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidState("t_end must be finite and >= 0");
  if (t_end > 0.0 && !(dt > 0.0)) throw InvalidState("dt must be > 0");
  if (options.store_every == 0) throw InvalidState("store_every must be >= 1");

  const detail::StepGenerators stepper = options.schedule
                                             ? detail::StepGenerators(p.omega0, options.schedule)
                                             : detail::StepGenerators(p.omega0, p);
  const std::size_t steps = detail::step_count(t_end, dt);
  const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

  Trajectory traj;
  traj.params = p;
  traj.step = h;
  traj.times.reserve(steps / options.store_every + 2);
  traj.states.reserve(steps / options.store_every + 2);

  Matrix4 rho = rho0.matrix();
  detail::check_state(0.0, rho, options.tolerances);
  traj.times.push_back(0.0);
  traj.states.emplace_back(rho);

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    rho = stepper.step(rho, t, h);
    const std::size_t done = k + 1;
    if (done % options.store_every == 0 || done == steps) {
      const double t_next = static_cast<double>(done) * h;
      detail::check_state(t_next, rho, options.tolerances);
      traj.times.push_back(t_next);
      traj.states.emplace_back(rho);
    }
  }
  return traj;
}

/// Integrates and returns the state at each requested time (ascending,
/// starting at or after 0). Consecutive samples are joined with uniform
/// steps no larger than dt.
inline std::vector<DensityMatrix> integrate_sampled(const DensityMatrix& rho0, const ModelParams& p,
                                                    const std::vector<double>& sample_times, double dt,
                                                    const Tolerances& tol = {}) {
  p.check();
  if (!(dt > 0.0)) throw InvalidState("dt must be > 0");
  const detail::StepGenerators stepper(p.omega0, p);
  std::vector<DensityMatrix> out;
  out.reserve(sample_times.size());
  Matrix4 rho = rho0.matrix();
  detail::check_state(0.0, rho, tol);
  double t = 0.0;
  for (double target : sample_times) {
    if (!(target >= t)) throw InvalidState("sample times must be ascending and >= 0");
    const std::size_t steps = detail::step_count(target - t, dt);
    const double h = steps == 0 ? 0.0 : (target - t) / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) rho = stepper.step(rho, t + static_cast<double>(k) * h, h);
    t = target;
    detail::check_state(t, rho, tol);
    out.emplace_back(rho);
  }
  return out;
}

/// Largest X-pattern entry difference between runs at omega0 = 0 and at
/// p.omega0, sampled at every stored step. Quantifies how inert omega0 is
/// on the X-state family.
inline double omega0_invariance_check(const XState& rho0, const ModelParams& p, double t, double dt = 0.0) {
  if (!rho0.population_symmetric()) throw InvalidState("omega0_invariance_check expects a symmetric X state");
  if (dt <= 0.0) dt = p.gamma_decay > 0.0 ? 1e-3 / p.gamma_decay : 1e-3;
  ModelParams bare = p;
  bare.omega0 = 0.0;
  const DensityMatrix start = from_x_params(rho0);
  const Trajectory with = integrate(start, p, t, dt);
  const Trajectory without = integrate(start, bare, t, dt);
  double worst = 0.0;
  for (std::size_t k = 0; k < with.states.size(); ++k) {
    const Matrix4& a = with.states[k].matrix();
    const Matrix4& b = without.states[k].matrix();
    for (Eigen::Index i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a(i, i) - b(i, i)));
    worst = std::max(worst, std::abs(a(1, 2) - b(1, 2)));
    worst = std::max(worst, std::abs(a(2, 1) - b(2, 1)));
  }
  return worst;
}

}  // namespace dicke
