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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/analytic.hpp"
#include "dicke/entangle.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/parallel.hpp"
#include "dicke/qstate.hpp"

// Scenario drivers. Every time in this header is the dimensionless product
// Gamma * t, and step sizes are Gamma * dt.

namespace dicke {

enum class Engine { analytic, numeric };

inline constexpr std::string_view to_string(Engine e) { return e == Engine::analytic ? "analytic" : "numeric"; }

struct SweepSpec {
  std::vector<double> f_values;
  double t_max = 10.0;
  /// Number of samples on [0, t_max], endpoints included.
  std::size_t n_steps = 500;
  ModelParams params{};
  Engine engine = Engine::analytic;
  double dt = 1e-3;
  /// Worker threads; 0 means one per hardware thread.
  unsigned jobs = 0;

  void check() const {
    params.check();
    if (!(params.gamma_decay > 0.0)) throw InvalidState("sweeps are expressed in Gamma*t and need Gamma > 0");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidState("t_max must be > 0");
    if (n_steps < 2) throw InvalidState("n_steps must be >= 2");
    if (engine == Engine::numeric && !(dt > 0.0)) throw InvalidState("dt must be > 0 for the numeric engine");
  }

  std::vector<double> grid() const {
    std::vector<double> g(n_steps);
    const double spacing = t_max / static_cast<double>(n_steps - 1);
    for (std::size_t i = 0; i < n_steps; ++i) g[i] = spacing * static_cast<double>(i);
    g.back() = t_max;
    return g;
  }
};

/// One (family, parameter, Gamma t) sample of the entanglement measures.
struct SeriesRow {
  std::string family;
  double param = 0.0;
  double gamma_t = 0.0;
  double xi = 0.0;
  double concurrence = 0.0;
};

/// rho11 rho44 - |rho23|^2 read off a full matrix.
inline double xi_of(const DensityMatrix& rho) {
  const Matrix4& m = rho.matrix();
  return m(0, 0).real() * m(3, 3).real() - std::norm(0.5 * (m(1, 2) + std::conj(m(2, 1))));
}

/// States on the Gamma*t grid. The analytic engine needs an exchange-symmetric
/// X state; the numeric engine accepts anything physical.
inline std::vector<DensityMatrix> evolve_on_grid(const DensityMatrix& rho0, const ModelParams& p,
                                                 const std::vector<double>& gamma_ts, Engine engine, double dt) {
  p.check();
  if (!(p.gamma_decay > 0.0)) throw InvalidState("Gamma*t grids need Gamma > 0");
  std::vector<double> times(gamma_ts.size());
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = gamma_ts[i] / p.gamma_decay;

  if (engine == Engine::numeric) return integrate_sampled(rho0, p, times, dt / p.gamma_decay);

  if (off_x_pattern_norm(rho0) > 0.0) throw InvalidState("the analytic engine only handles X states");
  const XState x0 = x_part(rho0);
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(from_x_params(evolve_x(x0, p, t)));
  return out;
}

inline std::vector<SeriesRow> series_rows(std::string_view family, double param, const std::vector<double>& gamma_ts,
                                          const std::vector<DensityMatrix>& states, Engine engine) {
  std::vector<SeriesRow> rows;
  rows.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double c = engine == Engine::analytic ? concurrence_x(x_part(states[i])) : concurrence_general(states[i]);
    rows.push_back({std::string(family), param, gamma_ts[i], xi_of(states[i]), c});
  }
  return rows;
}

/// Werner xi(Gamma t, F) surface, F-major.
inline std::vector<SeriesRow> xi_surface(const SweepSpec& spec) {
  spec.check();
  for (double f : spec.f_values) require_unit_interval(f, "F");
  const std::vector<double> grid = spec.grid();
  auto per_f = parallel_map(spec.f_values.size(), spec.jobs, [&](std::size_t k) {
    const double f = spec.f_values[k];
    if (spec.engine == Engine::analytic) {
      std::vector<SeriesRow> rows;
      rows.reserve(grid.size());
      for (double gt : grid) {
        const XState x = evolve_werner(f, spec.params, gt / spec.params.gamma_decay);
        rows.push_back({"werner", f, gt, xi(x), concurrence_x(x)});
      }
      return rows;
    }
    const auto states = evolve_on_grid(from_x_params(werner(f)), spec.params, grid, Engine::numeric, spec.dt);
    return series_rows("werner", f, grid, states, Engine::numeric);
  });
  std::vector<SeriesRow> rows;
  for (auto& block : per_f) rows.insert(rows.end(), block.begin(), block.end());
  return rows;
}

struct CurvePoint {
  double gamma_t = 0.0;
  double concurrence = 0.0;
};

/// C(Gamma t) on the sweep grid. Analytic: X-state concurrence of the closed
/// form. Numeric: Wootters concurrence of the integrated matrix.
inline std::vector<CurvePoint> concurrence_curve(const DensityMatrix& rho0, const SweepSpec& spec) {
  spec.check();
  const std::vector<double> grid = spec.grid();
  const auto rows = series_rows("", 0.0, grid, evolve_on_grid(rho0, spec.params, grid, spec.engine, spec.dt), spec.engine);
  std::vector<CurvePoint> curve;
  curve.reserve(rows.size());
  for (const auto& r : rows) curve.push_back({r.gamma_t, r.concurrence});
  return curve;
}

inline std::vector<CurvePoint> concurrence_curve(const XState& rho0, const SweepSpec& spec) {
  return concurrence_curve(from_x_params(rho0), spec);
}

/// First grid time with |C - c_inf| <= tol.
inline std::optional<double> saturation_time(const std::vector<CurvePoint>& curve, double c_inf, double tol = 1e-6) {
  for (const auto& pt : curve)
    if (std::abs(pt.concurrence - c_inf) <= tol) return pt.gamma_t;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Event finding

enum class EventKind { sudden_death, onset, none_found };

inline constexpr std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::sudden_death: return "sudden_death";
    case EventKind::onset: return "onset";
    case EventKind::none_found: return "none_found";
  }
  return "unknown";
}

struct EventTime {
  EventKind kind = EventKind::none_found;
  std::optional<double> t_star;
  /// Width of the final bisection bracket; t_star is its midpoint.
  double bracket_width = 0.0;
};

struct EventOptions {
  std::size_t scan_samples = 1000;
  double bracket_tolerance = 1e-10;
};

namespace detail {

/// Dense uniform scan of [0, t_max] for the first sample where `crossed`
/// holds, then bisection between it and the preceding sample.
inline EventTime first_crossing(const std::function<bool(double)>& crossed, double t_max, EventKind kind,
                                const EventOptions& opt) {
  if (!(t_max > 0.0)) throw InvalidState("t_max must be > 0");
  if (opt.scan_samples < 2) throw InvalidState("need at least two scan samples");
  const double spacing = t_max / static_cast<double>(opt.scan_samples - 1);
  double lo = 0.0;
  std::optional<double> hi;
  for (std::size_t i = 1; i < opt.scan_samples; ++i) {
    const double t = i + 1 == opt.scan_samples ? t_max : spacing * static_cast<double>(i);
    if (crossed(t)) {
      hi = t;
      break;
    }
    lo = t;
  }
  if (!hi) return {};

  double upper = *hi;
  for (int iter = 0; iter < 200 && upper - lo > opt.bracket_tolerance; ++iter) {
    const double mid = 0.5 * (lo + upper);
    if (mid <= lo || mid >= upper) break;
    if (crossed(mid))
      upper = mid;
    else
      lo = mid;
  }
  return {kind, 0.5 * (lo + upper), upper - lo};
}

}  // namespace detail

/// |rho23| - sqrt(rho11 rho44); C = 2 max{0, this}.
inline double concurrence_margin(const XState& x) {
  return std::abs(x.rho23()) - std::sqrt(std::max(0.0, x.rho11() * x.rho44()));
}

/// First Gamma t at which the concurrence reaches zero. Asymptotic decay that
/// stays positive on [0, gamma_t_max] reports none_found.
inline EventTime disentanglement_time(const XState& rho0, const ModelParams& p, double gamma_t_max,
                                      const EventOptions& opt = {}) {
  p.check();
  if (!(p.gamma_decay > 0.0)) throw InvalidState("event times are expressed in Gamma*t and need Gamma > 0");
  if (!(concurrence_margin(rho0) > 0.0)) throw InvalidState("initial state is already disentangled");
  auto dead = [&](double gt) { return concurrence_margin(evolve_x(rho0, p, gt / p.gamma_decay)) <= 0.0; };
  return detail::first_crossing(dead, gamma_t_max, EventKind::sudden_death, opt);
}

/// First Gamma t at which xi turns negative, for an initially separable state.
inline EventTime onset_time(const XState& rho0, const ModelParams& p, double gamma_t_max, const EventOptions& opt = {}) {
  p.check();
  if (!(p.gamma_decay > 0.0)) throw InvalidState("event times are expressed in Gamma*t and need Gamma > 0");
  if (xi(rho0) < -kBoundaryTolerance) throw InvalidState("initial state is already entangled");
  auto entangled = [&](double gt) { return xi(evolve_x(rho0, p, gt / p.gamma_decay)) < 0.0; };
  return detail::first_crossing(entangled, gamma_t_max, EventKind::onset, opt);
}

// ---------------------------------------------------------------------------
// Long-time table

struct LabeledState {
  std::string family;
  double param = 0.0;
  XState state;
};

struct LongTimeRow {
  std::string family;
  double param = 0.0;
  double s_minus = 0.0;
  /// S-/2.
  double c_inf = 0.0;
  /// Concurrence of the stationary matrix, computed independently.
  double c_check = 0.0;
  bool consistent = false;
};

inline std::vector<LongTimeRow> longtime_report(const std::vector<LabeledState>& family, double tol = 1e-12) {
  std::vector<LongTimeRow> rows;
  rows.reserve(family.size());
  for (const auto& entry : family) {
    const double s_minus = s_invariants(entry.state).s_minus;
    const double c_check = concurrence_x(long_time_limit(entry.state));
    rows.push_back({entry.family, entry.param, s_minus, 0.5 * s_minus, c_check,
                    std::abs(0.5 * s_minus - c_check) <= tol});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Analytic vs numeric agreement

struct OracleComparison {
  double max_deviation = 0.0;
  double at_gamma_t = 0.0;
};

/// Integrates from `rho0` and compares every step against the closed form,
/// entry by entry.
inline OracleComparison oracle_deviation(const XState& rho0, const ModelParams& p, double gamma_t_max, double dt) {
  p.check();
  if (!(p.gamma_decay > 0.0)) throw InvalidState("oracle comparison is expressed in Gamma*t and needs Gamma > 0");
  const Trajectory traj = integrate(from_x_params(rho0), p, gamma_t_max / p.gamma_decay, dt / p.gamma_decay);
  OracleComparison result;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const Matrix4 closed = from_x_params(evolve_x(rho0, p, traj.times[k])).matrix();
    const double dev = (traj.states[k].matrix() - closed).cwiseAbs().maxCoeff();
    if (dev > result.max_deviation) {
      result.max_deviation = dev;
      result.at_gamma_t = traj.times[k] * p.gamma_decay;
    }
  }
  return result;
}

}  // namespace dicke
