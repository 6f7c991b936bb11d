// Copyright 2026 The weakinv Authors
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

#include "weakinv/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace weakinv {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.is_object() || !j.contains(key)) fail(field + "." + key, "missing");
  return j.at(key);
}

std::vector<double> get_numbers(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::string kind_of(const json& j, const std::string& field) {
  const json& k = require(j, "kind", field);
  if (!k.is_string()) fail(field + ".kind", "expected a string");
  return k.get<std::string>();
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Operator parse_matrix(const json& literal, const std::string& field) {
  if (!literal.is_array() || literal.empty()) fail(field, "expected a non-empty array of [re, im] pairs");
  const std::size_t len = literal.size();
  const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(len))));
  if (dim * dim != len) fail(field, "length " + std::to_string(len) + " is not a perfect square");
  std::vector<complex> entries;
  entries.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    const json& pair = literal[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!pair.is_array() || pair.size() != 2) fail(where, "expected [re, im]");
    entries.emplace_back(get_number(pair[0], where), get_number(pair[1], where));
  }
  return Operator(dim, std::move(entries));
}

json matrix_to_json(const Operator& op) {
  json out = json::array();
  for (const auto& v : op.entries()) out.push_back({v.real(), v.imag()});
  return out;
}

ScalarSchedule parse_scalar_schedule(const json& j, const std::string& field) {
  if (j.is_number()) return ScalarSchedule(get_number(j, field));
  if (!j.is_object()) fail(field, "expected a number or schedule object");
  const std::string kind = kind_of(j, field);
  try {
    if (kind == "constant") return ScalarSchedule(get_number(require(j, "value", field), field + ".value"));
    if (kind == "sinusoidal") {
      auto opt = [&](const char* key) {
        return j.contains(key) ? get_number(j.at(key), field + "." + key) : 0.0;
      };
      return ScalarSchedule::sinusoidal(opt("offset"), opt("amplitude"), opt("frequency"), opt("phase"));
    }
    if (kind == "tabulated") {
      return ScalarSchedule::tabulated(get_numbers(require(j, "times", field), field + ".times"),
                                       get_numbers(require(j, "values", field), field + ".values"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(field, e.what());
  }
  fail(field + ".kind", "unknown scalar schedule kind '" + kind + "'");
}

OperatorSchedule parse_operator_schedule(const json& j, const std::string& field) {
  if (j.is_array()) return OperatorSchedule(parse_matrix(j, field));
  if (!j.is_object()) fail(field, "expected a matrix literal or schedule object");
  const std::string kind = kind_of(j, field);
  try {
    if (kind == "constant") return OperatorSchedule(parse_matrix(require(j, "value", field), field + ".value"));
    if (kind == "tabulated") {
      std::vector<double> times = get_numbers(require(j, "times", field), field + ".times");
      const json& values = require(j, "values", field);
      if (!values.is_array()) fail(field + ".values", "expected an array of matrix literals");
      std::vector<Operator> ops;
      for (std::size_t i = 0; i < values.size(); ++i)
        ops.push_back(parse_matrix(values[i], field + ".values[" + std::to_string(i) + "]"));
      return OperatorSchedule::tabulated(std::move(times), std::move(ops));
    }
    if (kind == "scaled") {
      return OperatorSchedule::scaled(
          parse_scalar_schedule(require(j, "coefficient", field), field + ".coefficient"),
          parse_matrix(require(j, "value", field), field + ".value"));
    }
    if (kind == "sinusoidal") fail(field + ".kind", "operator schedules cannot be sinusoidal");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(field, e.what());
  }
  fail(field + ".kind", "unknown operator schedule kind '" + kind + "'");
}

LindbladModel parse_model(const json& j) {
  if (!j.is_object()) fail("model", "expected an object");
  LindbladModel model;
  const json& dim = require(j, "dim", "model");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) fail("model.dim", "must be an integer >= 1");
  model.dim = dim.get<std::size_t>();
  model.hamiltonian = parse_operator_schedule(require(j, "hamiltonian", "model"), "model.hamiltonian");
  if (j.contains("channels")) {
    const json& channels = j.at("channels");
    if (!channels.is_array()) fail("model.channels", "expected an array");
    for (std::size_t n = 0; n < channels.size(); ++n) {
      const std::string field = "model.channels[" + std::to_string(n) + "]";
      model.channels.push_back({parse_operator_schedule(require(channels[n], "op", field), field + ".op"),
                                parse_scalar_schedule(require(channels[n], "alpha", field), field + ".alpha")});
    }
  }
  try {
    model.finalize();
  } catch (const Error& e) {
    fail("model", e.what());
  }
  return model;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t d = traj.dim();
  out << "t";
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) out << ",re_" << j << "_" << k << ",im_" << j << "_" << k;
  out << "\n";
  for (std::size_t n = 0; n < traj.samples.size(); ++n) {
    out << format_double(traj.grid.node(n));
    for (const auto& v : traj.samples[n].entries())
      out << "," << format_double(v.real()) << "," << format_double(v.imag());
    out << "\n";
  }
}

void write_spectrum_csv(std::ostream& out, const SpectrumSeries& series) {
  const std::size_t d = series.total_variation.size();
  out << "t";
  for (std::size_t j = 1; j <= d; ++j) out << ",lambda_" << j;
  out << "\n";
  for (std::size_t n = 0; n < series.eigenvalues.size(); ++n) {
    out << format_double(series.grid.node(n));
    for (double v : series.eigenvalues[n]) out << "," << format_double(v);
    out << "\n";
  }
}

void write_expectation_csv(std::ostream& out, const TimeGrid& grid, const std::vector<double>& values) {
  out << "t,expectation\n";
  for (std::size_t n = 0; n < values.size(); ++n)
    out << format_double(grid.node(n)) << "," << format_double(values[n]) << "\n";
}

json to_json(const TimeGrid& grid) {
  return {{"t_start", grid.t_start()}, {"t_end", grid.t_end()}, {"n_steps", grid.n_steps()}};
}

json to_json(const MonitorReport& r, const MonitorBounds& bounds) {
  json out = {
      {"max_trace_drift", r.max_trace_drift},
      {"max_hermiticity_defect", r.max_hermiticity_defect},
      {"min_eigenvalue", r.min_eigenvalue},
      {"max_leakage", r.max_leakage ? json(*r.max_leakage) : json(nullptr)},
      {"leakage_level", r.leakage_level ? json(*r.leakage_level) : json(nullptr)},
      {"flags",
       {{"trace", !r.trace_ok(bounds)},
        {"positivity", !r.positivity_ok(bounds)},
        {"leakage", !r.leakage_ok(bounds)}}},
      {"bounds",
       {{"trace_drift", bounds.trace_drift},
        {"min_eigenvalue", bounds.min_eigenvalue},
        {"leakage", bounds.leakage}}},
      {"ok", r.ok(bounds)},
  };
  return out;
}

json to_json(const InvariantReport& r) {
  return {{"max_expectation_drift", r.max_expectation_drift},
          {"spectrum_total_variation", r.spectrum_total_variation},
          {"classification", to_string(r.classification)},
          {"strong_threshold", r.strong_threshold}};
}

json to_json(const ActionReport& r) {
  return {{"action", r.action_value},
          {"grad_rho_residual", r.grad_rho_residual},
          {"grad_lam_residual", r.grad_lam_residual},
          {"boundary_rho", r.boundary_rho_term},
          {"boundary_lam", r.boundary_lam_term},
          {"boundary_rho_pairing_defect", r.boundary_rho_pairing_defect},
          {"boundary_lam_pairing_defect", r.boundary_lam_pairing_defect},
          {"grid", to_json(r.grid)}};
}

}  // namespace weakinv
