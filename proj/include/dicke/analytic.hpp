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
#include <string>

#include "dicke/qstate.hpp"

namespace dicke {

/// Markovian rates of the two-atom model, in inverse time units.
///
/// `gamma_decay` is the collective decay rate (the real part of the bath
/// kernel integrates to gamma_decay/2 per unit time), `gamma_shift` the
/// exchange/level-shift rate (imaginary part integrates to gamma_shift/2),
/// and `omega0` the bare transition frequency.
struct ModelParams {
  double gamma_decay = 1.0;
  double gamma_shift = 0.0;
  double omega0 = 0.0;

  void check() const {
    if (!std::isfinite(gamma_decay) || gamma_decay < 0.0)
      throw InvalidState("gamma_decay must be finite and >= 0");
    if (!std::isfinite(gamma_shift)) throw InvalidState("gamma_shift must be finite");
    if (!std::isfinite(omega0) || omega0 < 0.0) throw InvalidState("omega0 must be finite and >= 0");
  }
};

/// Initial-state constants that fully determine the closed-form evolution.
struct SInvariants {
  double s_minus = 0.0;  ///< rho22 + rho33 - rho23 - rho32 (twice the singlet weight)
  double s_plus = 0.0;   ///< rho22 + rho33 + rho23 + rho32 (twice the |Psi+> weight)
  double rho_i0 = 0.0;   ///< Im rho23(0)
  double rho11_0 = 0.0;
};

inline SInvariants s_invariants(const XState& rho0) {
  const double inner = rho0.rho22() + rho0.rho33();
  const double twice_re = 2.0 * rho0.rho23().real();
  return {inner - twice_re, inner + twice_re, rho0.rho23().imag(), rho0.rho11()};
}

namespace detail {

inline void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidState("time must be finite and >= 0");
}

}  // namespace detail

/// Closed-form Markovian evolution of an exchange-symmetric X state.
///
/// The singlet weight S-/2 is conserved, the |Psi+> weight is fed by |++>
/// and decays at 2*Gamma, and the Psi+/Psi- coherence (Im rho23) rotates at
/// gamma while decaying at Gamma. omega0 never enters: both single-excitation
/// states carry the same Sigma_z eigenvalue.
///
/// Throws InvalidState for t < 0 and for rho22(0) != rho33(0); the closed form
/// does not reproduce asymmetric initial data, use lindblad::integrate there.
inline XState evolve_x(const XState& rho0, const ModelParams& p, double t) {
  p.check();
  detail::require_time(t);
  if (!rho0.population_symmetric())
    throw InvalidState("evolve_x requires rho22(0) == rho33(0); use the numeric engine for asymmetric states");

  const SInvariants s = s_invariants(rho0);
  const double gt = p.gamma_decay * t;
  const double slow = std::exp(-gt);
  const double fast = std::exp(-2.0 * gt);
  const double s_t = s.s_plus + 4.0 * s.rho11_0 * gt;

  const double rho11 = s.rho11_0 * fast;
  const double mean_inner = 0.25 * (s.s_minus + fast * s_t);
  const double rotation = slow * s.rho_i0;
  const double rho22 = mean_inner - rotation * std::sin(p.gamma_shift * t);
  const double rho33 = mean_inner + rotation * std::sin(p.gamma_shift * t);
  const Complex rho23(0.25 * (-s.s_minus + fast * s_t), rotation * std::cos(p.gamma_shift * t));
  const double rho44 = 1.0 - rho11 - rho22 - rho33;
  return XState::create(rho11, rho22, rho33, rho44, rho23);
}

/// Werner-state specialization; independent of gamma_shift because the
/// Werner coherence is real.
inline XState evolve_werner(double fidelity, const ModelParams& p, double t) {
  require_unit_interval(fidelity, "F");
  p.check();
  detail::require_time(t);
  const double gt = p.gamma_decay * t;
  const double fast = std::exp(-2.0 * gt);
  const double noise = 1.0 - fidelity;
  const double feed = fast * (noise / 6.0 + noise / 3.0 * gt);
  const double rho11 = noise / 3.0 * fast;
  const double rho22 = 0.5 * fidelity + feed;
  const double rho23 = -0.5 * fidelity + feed;
  const double rho44 = noise - 2.0 * noise * (1.0 + gt) / 3.0 * fast;
  return XState::create(rho11, rho22, rho22, rho44, rho23);
}

/// Stationary state: only the singlet weight survives, the rest ends in |-->.
inline XState long_time_limit(const XState& rho0) {
  const double s_minus = s_invariants(rho0).s_minus;
  const double quarter = 0.25 * s_minus;
  return XState::create(0.0, quarter, quarter, 1.0 - 0.5 * s_minus, -quarter);
}

}  // namespace dicke
