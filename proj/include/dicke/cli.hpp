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

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dicke/dicke.hpp"
#include "dicke/io.hpp"

// Command-line front end. run() is the whole program; main() only forwards
// argv and the standard streams.

namespace dicke::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kPhysics = 2, kOracleMismatch = 3 };

enum class Command { evolve, scan_xi, curve, event, longtime, oracle_compare, validate };

enum class Family { werner, rho_tilde, rho_tilde_eps, custom_x, custom_full };

enum class Format { csv, json };

enum class EventChoice { automatic, sudden_death, onset };

struct StateSpec {
  Family family = Family::werner;
  double fidelity = 0.75;
  double a = 0.0;
  double eps = 0.0;
  double rho11 = 0.0, rho22 = 0.0, rho33 = 0.0, rho44 = 0.0;
  double rho23_re = 0.0, rho23_im = 0.0;
  std::string state_file;
};

struct RunConfig {
  Command command = Command::evolve;
  StateSpec state;
  double gamma_ratio = 0.0;
  double omega0_ratio = 0.0;
  double gamma_t_max = 10.0;
  std::size_t n_steps = 500;
  double dt = 1e-3;
  Engine engine = Engine::analytic;
  Format format = Format::csv;
  std::string output;
  unsigned jobs = 0;
  std::vector<double> f_list;
  std::vector<double> param_list;
  EventChoice event = EventChoice::automatic;
  double threshold = 1e-7;

  /// Gamma = 1: user-facing times are Gamma t, gamma is given as gamma/Gamma.
  ModelParams model() const { return {1.0, gamma_ratio, omega0_ratio}; }
};

/// Thrown for configurations that parse but cannot be run.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string family_name(Family f) {
  switch (f) {
    case Family::werner: return "werner";
    case Family::rho_tilde: return "rho_tilde";
    case Family::rho_tilde_eps: return "rho_tilde_eps";
    case Family::custom_x: return "custom_x";
    case Family::custom_full: return "custom_full";
  }
  return "unknown";
}

inline double family_param(const StateSpec& s) {
  switch (s.family) {
    case Family::werner: return s.fidelity;
    case Family::rho_tilde: return s.a;
    case Family::rho_tilde_eps: return s.eps;
    default: return 0.0;
  }
}

inline DensityMatrix build_state_unchecked(const StateSpec& s) {
  switch (s.family) {
    case Family::werner: return from_x_params(werner(s.fidelity));
    case Family::rho_tilde: return from_x_params(rho_tilde(s.a));
    case Family::rho_tilde_eps: return from_x_params(rho_tilde_eps(s.a, s.eps));
    case Family::custom_x:
      return from_x_params(XState::create(s.rho11, s.rho22, s.rho33, s.rho44, {s.rho23_re, s.rho23_im}));
    case Family::custom_full: {
      if (s.state_file.empty()) throw UsageError("--family custom_full needs --state-file");
      std::ifstream in(s.state_file);
      if (!in) throw UsageError("cannot open state file " + s.state_file);
      const io::json j = io::json::parse(in);
      const DensityMatrix rho = io::density_matrix_from_json(j);
      if (!validate(rho).passed) throw InvalidState("state file does not hold a valid density matrix");
      return rho;
    }
  }
  throw UsageError("unknown family");
}

/// Parameter-range violations are usage errors at this level.
inline DensityMatrix build_state(const StateSpec& s) {
  try {
    return build_state_unchecked(s);
  } catch (const InvalidState& e) {
    throw UsageError(e.what());
  } catch (const io::json::exception& e) {
    throw UsageError(std::string("malformed state file: ") + e.what());
  }
}

/// The state as an X state, or nullopt when it has weight outside the X
/// pattern.
inline std::optional<XState> as_x_state(const DensityMatrix& rho) {
  if (off_x_pattern_norm(rho) > 0.0) return std::nullopt;
  return x_part(rho);
}

inline void require_analytic_ok(const DensityMatrix& rho, Engine engine) {
  if (engine != Engine::analytic) return;
  const auto x = as_x_state(rho);
  if (!x) throw UsageError("the analytic engine only handles X states; pass --engine numeric");
  if (!x->population_symmetric())
    throw UsageError("the analytic engine requires rho22 == rho33 (exchange-symmetric populations); "
                     "pass --engine numeric for asymmetric states");
}

inline SweepSpec sweep_spec(const RunConfig& cfg) {
  SweepSpec spec;
  spec.f_values = cfg.f_list;
  spec.t_max = cfg.gamma_t_max;
  spec.n_steps = cfg.n_steps;
  spec.params = cfg.model();
  spec.engine = cfg.engine;
  spec.dt = cfg.dt;
  spec.jobs = cfg.jobs;
  try {
    spec.check();
    for (double f : spec.f_values) require_unit_interval(f, "F");
  } catch (const InvalidState& e) {
    throw UsageError(e.what());
  }
  return spec;
}

inline std::vector<double> default_f_list() {
  std::vector<double> f;
  for (int i = 0; i <= 20; ++i) f.push_back(i / 20.0);
  return f;
}

// ---------------------------------------------------------------------------
// Commands. Each writes to `out` and returns an exit code.

inline int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  const DensityMatrix rho0 = build_state(cfg.state);
  require_analytic_ok(rho0, cfg.engine);
  const SweepSpec spec = sweep_spec(cfg);
  const std::vector<double> grid = spec.grid();
  const std::vector<DensityMatrix> states = evolve_on_grid(rho0, spec.params, grid, cfg.engine, cfg.dt);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const ValidityReport r = validate(states[k]);
    if (!r.passed) throw ValidityError(grid[k], r);
  }
  if (cfg.format == Format::csv) {
    io::write_states_csv(out, "gamma_t", grid, states, true);
    return kSuccess;
  }
  io::json doc{{"command", "evolve"},
               {"basis_order", io::basis_order_json()},
               {"engine", std::string(to_string(cfg.engine))},
               {"family", family_name(cfg.state.family)},
               {"params", io::to_json(spec.params)},
               {"gamma_t", grid}};
  io::json entries = io::json::array(), conc = io::json::array(), xis = io::json::array();
  for (const auto& s : states) {
    entries.push_back(io::to_json(s).at("entries"));
    conc.push_back(concurrence_general(s));
    xis.push_back(xi_of(s));
  }
  doc["states"] = std::move(entries);
  doc["concurrence"] = std::move(conc);
  doc["xi"] = std::move(xis);
  out << doc.dump(2) << '\n';
  return kSuccess;
}

inline int cmd_scan_xi(const RunConfig& cfg, std::ostream& out) {
  SweepSpec spec = sweep_spec(cfg);
  if (spec.f_values.empty()) spec.f_values = default_f_list();
  const auto rows = xi_surface(spec);
  if (cfg.format == Format::csv) {
    io::write_series_csv(out, rows);
  } else {
    out << io::json{{"command", "scan-xi"},
                    {"engine", std::string(to_string(cfg.engine))},
                    {"params", io::to_json(spec.params)},
                    {"rows", io::series_json(rows)}}
               .dump(2)
        << '\n';
  }
  return kSuccess;
}

inline int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  const DensityMatrix rho0 = build_state(cfg.state);
  require_analytic_ok(rho0, cfg.engine);
  const SweepSpec spec = sweep_spec(cfg);
  const std::vector<double> grid = spec.grid();
  const auto rows = series_rows(family_name(cfg.state.family), family_param(cfg.state), grid,
                                evolve_on_grid(rho0, spec.params, grid, cfg.engine, cfg.dt), cfg.engine);
  if (cfg.format == Format::csv) {
    io::write_series_csv(out, rows);
  } else {
    out << io::json{{"command", "curve"},
                    {"engine", std::string(to_string(cfg.engine))},
                    {"params", io::to_json(spec.params)},
                    {"rows", io::series_json(rows)}}
               .dump(2)
        << '\n';
  }
  return kSuccess;
}

inline int cmd_event(const RunConfig& cfg, std::ostream& out) {
  const DensityMatrix rho0 = build_state(cfg.state);
  require_analytic_ok(rho0, Engine::analytic);
  const XState x0 = x_part(rho0);
  EventChoice choice = cfg.event;
  if (choice == EventChoice::automatic)
    choice = concurrence_margin(x0) > 0.0 ? EventChoice::sudden_death : EventChoice::onset;
  const ModelParams p = cfg.model();
  EventTime ev;
  try {
    ev = choice == EventChoice::sudden_death ? disentanglement_time(x0, p, cfg.gamma_t_max)
                                             : onset_time(x0, p, cfg.gamma_t_max);
  } catch (const InvalidState& e) {
    throw UsageError(e.what());
  }
  if (cfg.format == Format::csv) {
    io::write_csv_row(out, {"family", "param", "kind", "gamma_t_star", "bracket_width"});
    io::write_csv_row(out, {family_name(cfg.state.family), io::format_number(family_param(cfg.state)),
                            std::string(to_string(ev.kind)), ev.t_star ? io::format_number(*ev.t_star) : "",
                            io::format_number(ev.bracket_width)});
  } else {
    io::json doc = io::to_json(ev);
    doc["command"] = "event";
    doc["family"] = family_name(cfg.state.family);
    doc["param"] = family_param(cfg.state);
    doc["gamma_t_max"] = cfg.gamma_t_max;
    out << doc.dump(2) << '\n';
  }
  return kSuccess;
}

inline std::vector<LabeledState> default_longtime_family() {
  std::vector<LabeledState> states;
  for (int i = 0; i <= 10; ++i) states.push_back({"werner", i / 10.0, werner(i / 10.0)});
  for (int i = 0; i <= 4; ++i) states.push_back({"rho_tilde", i / 4.0, rho_tilde(i / 4.0)});
  for (double a : {0.0, 0.3, 0.5}) states.push_back({"rho_tilde_eps", a, rho_tilde_eps(a, 0.01)});
  return states;
}

inline int cmd_longtime(const RunConfig& cfg, std::ostream& out) {
  std::vector<LabeledState> states;
  if (cfg.param_list.empty()) {
    states = default_longtime_family();
  } else {
    for (double v : cfg.param_list) {
      StateSpec s = cfg.state;
      switch (s.family) {
        case Family::werner: s.fidelity = v; break;
        case Family::rho_tilde: s.a = v; break;
        case Family::rho_tilde_eps: s.a = v; break;
        default: throw UsageError("--param-list applies to werner, rho_tilde and rho_tilde_eps");
      }
      states.push_back({family_name(s.family), v, x_part(build_state(s))});
    }
  }
  const auto rows = longtime_report(states);
  if (cfg.format == Format::csv)
    io::write_longtime_csv(out, rows);
  else
    out << io::json{{"command", "longtime"}, {"rows", io::longtime_json(rows)}}.dump(2) << '\n';
  for (const auto& r : rows)
    if (!r.consistent) return kPhysics;
  return kSuccess;
}

inline int cmd_oracle_compare(const RunConfig& cfg, std::ostream& out) {
  const DensityMatrix rho0 = build_state(cfg.state);
  require_analytic_ok(rho0, Engine::analytic);
  const OracleComparison cmp = oracle_deviation(x_part(rho0), cfg.model(), cfg.gamma_t_max, cfg.dt);
  const bool pass = cmp.max_deviation <= cfg.threshold;
  if (cfg.format == Format::csv) {
    io::write_csv_row(out, {"family", "param", "max_deviation", "at_gamma_t", "threshold", "result"});
    io::write_csv_row(out, {family_name(cfg.state.family), io::format_number(family_param(cfg.state)),
                            io::format_number(cmp.max_deviation), io::format_number(cmp.at_gamma_t),
                            io::format_number(cfg.threshold), pass ? "pass" : "fail"});
  } else {
    out << io::json{{"command", "oracle-compare"},
                    {"family", family_name(cfg.state.family)},
                    {"params", io::to_json(cfg.model())},
                    {"max_deviation", cmp.max_deviation},
                    {"at_gamma_t", cmp.at_gamma_t},
                    {"threshold", cfg.threshold},
                    {"pass", pass}}
               .dump(2)
        << '\n';
  }
  return pass ? kSuccess : kOracleMismatch;
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  DensityMatrix rho;
  if (cfg.state.family == Family::custom_full) {
    if (cfg.state.state_file.empty()) throw UsageError("--family custom_full needs --state-file");
    std::ifstream in(cfg.state.state_file);
    if (!in) throw UsageError("cannot open state file " + cfg.state.state_file);
    rho = io::density_matrix_from_json(io::json::parse(in));
  } else {
    rho = build_state(cfg.state);
  }
  const ValidityReport report = validate(rho);
  io::json doc{{"command", "validate"},
               {"basis_order", io::basis_order_json()},
               {"validity", io::to_json(report)},
               {"singlet_fidelity", singlet_fidelity(rho)}};
  if (report.passed) {
    doc["concurrence"] = concurrence_general(rho);
    doc["ppt"] = std::string(to_string(ppt_verdict(rho)));
    if (const auto x = as_x_state(rho)) doc["x_state"] = io::to_json(entanglement_report(*x));
  }
  if (cfg.format == Format::csv) {
    io::write_csv_row(out, {"hermiticity_defect", "trace_defect", "min_eigenvalue", "passed"});
    io::write_csv_row(out, {io::format_number(report.hermiticity_defect), io::format_number(report.trace_defect),
                            io::format_number(report.min_eigenvalue), report.passed ? "true" : "false"});
  } else {
    out << doc.dump(2) << '\n';
  }
  return report.passed ? kSuccess : kPhysics;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::evolve: return cmd_evolve(cfg, out);
    case Command::scan_xi: return cmd_scan_xi(cfg, out);
    case Command::curve: return cmd_curve(cfg, out);
    case Command::event: return cmd_event(cfg, out);
    case Command::longtime: return cmd_longtime(cfg, out);
    case Command::oracle_compare: return cmd_oracle_compare(cfg, out);
    case Command::validate: return cmd_validate(cfg, out);
  }
  return kUsage;
}

// ---------------------------------------------------------------------------
// Argument parsing

inline void configure(CLI::App& app, RunConfig& cfg) {
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  const std::map<std::string, Family> families{{"werner", Family::werner},
                                               {"rho_tilde", Family::rho_tilde},
                                               {"rho_tilde_eps", Family::rho_tilde_eps},
                                               {"custom_x", Family::custom_x},
                                               {"custom_full", Family::custom_full}};
  app.add_option("--family", cfg.state.family, "Initial-state family")
      ->transform(CLI::CheckedTransformer(families, CLI::ignore_case))
      ->option_text("{werner,rho_tilde,rho_tilde_eps,custom_x,custom_full}");
  app.add_option("--F", cfg.state.fidelity, "Werner singlet fidelity");
  app.add_option("--a", cfg.state.a, "rho_tilde parameter a");
  app.add_option("--eps", cfg.state.eps, "singlet admixture eps");
  app.add_option("--rho11", cfg.state.rho11, "custom_x population");
  app.add_option("--rho22", cfg.state.rho22, "custom_x population");
  app.add_option("--rho33", cfg.state.rho33, "custom_x population");
  app.add_option("--rho44", cfg.state.rho44, "custom_x population");
  app.add_option("--rho23-re", cfg.state.rho23_re, "custom_x coherence, real part");
  app.add_option("--rho23-im", cfg.state.rho23_im, "custom_x coherence, imaginary part");
  app.add_option("--state-file", cfg.state.state_file, "JSON density matrix for custom_full");

  app.add_option("--gamma-ratio", cfg.gamma_ratio, "Exchange rate gamma/Gamma");
  app.add_option("--omega0-ratio", cfg.omega0_ratio, "Transition frequency omega0/Gamma");
  app.add_option("--gamma-t-max", cfg.gamma_t_max, "Final time, as Gamma t");
  app.add_option("--n-steps", cfg.n_steps, "Grid samples on [0, gamma-t-max]");
  app.add_option("--dt", cfg.dt, "Integrator step, as Gamma dt");

  const std::map<std::string, Engine> engines{{"analytic", Engine::analytic}, {"numeric", Engine::numeric}};
  // Engine has an ADL to_string returning string_view, which CLI11's default
  // binding cannot use; route through the name instead.
  app.add_option_function<std::string>(
         "--engine", [&cfg, engines](const std::string& name) { cfg.engine = engines.at(name); },
         "Evolution engine")
      ->transform(CLI::IsMember(engines, CLI::ignore_case));
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
  app.add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->option_text("{csv,json}");
  app.add_option("--output,-o", cfg.output, "Output path (default: standard output)");
  app.add_option("--jobs,-j", cfg.jobs, "Worker threads for sweeps (0: all processors)");

  app.add_option("--F-list", cfg.f_list, "Werner F values for scan-xi")->delimiter(',');
  app.add_option("--param-list", cfg.param_list, "Family parameters for longtime")->delimiter(',');
  const std::map<std::string, EventChoice> events{
      {"auto", EventChoice::automatic}, {"sudden-death", EventChoice::sudden_death}, {"onset", EventChoice::onset}};
  app.add_option("--kind", cfg.event, "Event to locate")
      ->transform(CLI::CheckedTransformer(events, CLI::ignore_case))
      ->option_text("{auto,sudden-death,onset}");
  app.add_option("--threshold", cfg.threshold, "oracle-compare pass threshold");

  const std::vector<std::pair<std::string, Command>> commands{
      {"evolve", Command::evolve},     {"scan-xi", Command::scan_xi},   {"curve", Command::curve},
      {"event", Command::event},       {"longtime", Command::longtime}, {"oracle-compare", Command::oracle_compare},
      {"validate", Command::validate}};
  const std::map<std::string, std::string> help{
      {"evolve", "Time series of the full state with derived measures"},
      {"scan-xi", "xi(Gamma t, F) surface for Werner states"},
      {"curve", "Concurrence and xi versus Gamma t for one state"},
      {"event", "Locate sudden death or entanglement onset"},
      {"longtime", "Stationary concurrence table"},
      {"oracle-compare", "Closed form against numerical integration"},
      {"validate", "Physicality and entanglement diagnostics for one state"}};
  for (const auto& [name, command] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->fallthrough();
    sub->callback([&cfg, command = command] { cfg.command = command; });
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collective decay and entanglement of two atoms in a lossless cavity", "dicke"};
  RunConfig cfg;
  configure(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  std::ostringstream buffer;
  std::ostream& sink = cfg.output.empty() ? out : buffer;
  int code = kSuccess;
  try {
    code = dispatch(cfg, sink);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidityError& e) {
    err << "physics error: " << e.what() << '\n';
    return kPhysics;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPhysics;
  }
  if (!cfg.output.empty()) {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.output << '\n';
      return kUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace dicke::cli
