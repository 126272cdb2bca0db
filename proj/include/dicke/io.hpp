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

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dicke/entangle.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/qstate.hpp"
#include "dicke/scenarios.hpp"

// JSON and CSV encodings. Complex numbers are [re, im] pairs in JSON and
// paired _re/_im columns in CSV. Every matrix-bearing document carries a
// "basis_order" field listing |++>, |+->, |-+>, |--> as "++", "+-", "-+", "--".

namespace dicke::io {

using nlohmann::json;

inline json basis_order_json() {
  json order = json::array();
  for (auto label : kBasisOrder) order.push_back(std::string(label));
  return order;
}

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw InvalidState("complex numbers are encoded as [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline void check_basis_order(const json& j) {
  if (!j.contains("basis_order")) throw InvalidState("missing basis_order");
  if (j.at("basis_order") != basis_order_json())
    throw InvalidState("unsupported basis_order " + j.at("basis_order").dump());
}

inline json to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < 4; ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < 4; ++j) row.push_back(complex_json(rho.matrix()(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"type", "density_matrix"}, {"basis_order", basis_order_json()}, {"entries", std::move(rows)}};
}

inline json to_json(const XState& x) {
  return {{"type", "x_state"},         {"basis_order", basis_order_json()}, {"rho11", x.rho11()},
          {"rho22", x.rho22()},        {"rho33", x.rho33()},                {"rho44", x.rho44()},
          {"rho23", complex_json(x.rho23())}};
}

inline DensityMatrix density_matrix_from_json(const json& j) {
  check_basis_order(j);
  if (j.value("type", "density_matrix") == "x_state") {
    return from_x_params(XState::create(j.at("rho11").get<double>(), j.at("rho22").get<double>(),
                                        j.at("rho33").get<double>(), j.at("rho44").get<double>(),
                                        complex_from_json(j.at("rho23"))));
  }
  const json& rows = j.at("entries");
  if (!rows.is_array() || rows.size() != 4) throw InvalidState("entries must be a 4x4 array");
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!rows[i].is_array() || rows[i].size() != 4) throw InvalidState("entries must be a 4x4 array");
    for (std::size_t k = 0; k < 4; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(rows[i][k]);
  }
  return DensityMatrix(m);
}

inline XState x_state_from_json(const json& j) {
  check_basis_order(j);
  if (j.value("type", "x_state") == "density_matrix") return x_part(density_matrix_from_json(j));
  return XState::create(j.at("rho11").get<double>(), j.at("rho22").get<double>(), j.at("rho33").get<double>(),
                        j.at("rho44").get<double>(), complex_from_json(j.at("rho23")));
}

inline json to_json(const ModelParams& p) {
  return {{"gamma_decay", p.gamma_decay}, {"gamma_shift", p.gamma_shift}, {"omega0", p.omega0}};
}

inline json to_json(const ValidityReport& r) {
  return {{"hermiticity_defect", r.hermiticity_defect},
          {"trace_defect", r.trace_defect},
          {"min_eigenvalue", r.min_eigenvalue},
          {"passed", r.passed}};
}

inline json to_json(const EntanglementReport& r) {
  return {{"concurrence", r.concurrence}, {"xi", r.xi}, {"verdict", std::string(to_string(r.verdict))}};
}

inline json to_json(const EventTime& e) {
  json j{{"kind", std::string(to_string(e.kind))}, {"bracket_width", e.bracket_width}};
  j["t_star"] = e.t_star ? json(*e.t_star) : json(nullptr);
  return j;
}

inline json to_json(const Trajectory& traj) {
  json states = json::array();
  for (const auto& s : traj.states) states.push_back(to_json(s).at("entries"));
  return {{"type", "trajectory"}, {"basis_order", basis_order_json()}, {"params", to_json(traj.params)},
          {"step", traj.step},    {"times", traj.times},               {"states", std::move(states)}};
}

// ---------------------------------------------------------------------------
// CSV

/// Shortest-safe round-trip formatting: 17 significant digits.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// RFC 4180 field quoting.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << "\r\n";
}

inline std::vector<std::string> matrix_column_names() {
  std::vector<std::string> names;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const std::string base = "rho_" + std::to_string(i) + std::to_string(j);
      names.push_back(base + "_re");
      names.push_back(base + "_im");
    }
  return names;
}

inline void append_matrix_fields(std::vector<std::string>& fields, const DensityMatrix& rho) {
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) {
      fields.push_back(format_number(rho.matrix()(i, j).real()));
      fields.push_back(format_number(rho.matrix()(i, j).imag()));
    }
}

/// One row per state: time column, the 16 entries as re/im pairs and, when
/// `derived` is set, concurrence, xi and the smallest eigenvalue.
inline void write_states_csv(std::ostream& os, std::string_view time_label, const std::vector<double>& times,
                             const std::vector<DensityMatrix>& states, bool derived) {
  std::vector<std::string> header{std::string(time_label)};
  for (auto& n : matrix_column_names()) header.push_back(std::move(n));
  if (derived) {
    header.push_back("concurrence");
    header.push_back("xi");
    header.push_back("min_eigenvalue");
  }
  write_csv_row(os, header);
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::vector<std::string> fields{format_number(times[k])};
    append_matrix_fields(fields, states[k]);
    if (derived) {
      fields.push_back(format_number(concurrence_general(states[k])));
      fields.push_back(format_number(xi_of(states[k])));
      fields.push_back(format_number(validate(states[k]).min_eigenvalue));
    }
    write_csv_row(os, fields);
  }
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  write_states_csv(os, "t", traj.times, traj.states, false);
}

inline void write_series_csv(std::ostream& os, const std::vector<SeriesRow>& rows) {
  write_csv_row(os, {"family", "param", "gamma_t", "xi", "concurrence"});
  for (const auto& r : rows)
    write_csv_row(os, {r.family, format_number(r.param), format_number(r.gamma_t), format_number(r.xi),
                       format_number(r.concurrence)});
}

inline json series_json(const std::vector<SeriesRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"family", r.family}, {"param", r.param}, {"gamma_t", r.gamma_t}, {"xi", r.xi},
                   {"concurrence", r.concurrence}});
  return arr;
}

inline void write_longtime_csv(std::ostream& os, const std::vector<LongTimeRow>& rows) {
  write_csv_row(os, {"family", "param", "s_minus", "c_inf", "c_check", "consistent"});
  for (const auto& r : rows)
    write_csv_row(os, {r.family, format_number(r.param), format_number(r.s_minus), format_number(r.c_inf),
                       format_number(r.c_check), r.consistent ? "true" : "false"});
}

inline json longtime_json(const std::vector<LongTimeRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"family", r.family}, {"param", r.param}, {"s_minus", r.s_minus}, {"c_inf", r.c_inf},
                   {"c_check", r.c_check}, {"consistent", r.consistent}});
  return arr;
}

}  // namespace dicke::io
