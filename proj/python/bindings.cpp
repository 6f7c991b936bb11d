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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "weakinv/action.hpp"
#include "weakinv/dynamics.hpp"
#include "weakinv/invariant.hpp"
#include "weakinv/io.hpp"
#include "weakinv/scenarios.hpp"
#include "weakinv/superop.hpp"
#include "weakinv/verify.hpp"

namespace py = pybind11;
using namespace weakinv;

namespace {

using CArray = py::array_t<complex, py::array::c_style | py::array::forcecast>;

Operator to_operator(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw DimensionError("expected a square 2-D array");
  const auto d = static_cast<std::size_t>(a.shape(0));
  return Operator(d, std::vector<complex>(a.data(), a.data() + d * d));
}

CArray to_array(const Operator& op) {
  const auto d = static_cast<py::ssize_t>(op.dim());
  CArray out({d, d});
  std::memcpy(out.mutable_data(), op.entries().data(), sizeof(complex) * op.dim() * op.dim());
  return out;
}

CArray stack(const std::vector<Operator>& ops) {
  const auto n = static_cast<py::ssize_t>(ops.size());
  const auto d = static_cast<py::ssize_t>(ops.front().dim());
  CArray out({n, d, d});
  complex* dst = out.mutable_data();
  for (const Operator& op : ops) {
    std::memcpy(dst, op.entries().data(), sizeof(complex) * op.dim() * op.dim());
    dst += op.dim() * op.dim();
  }
  return out;
}

std::vector<Operator> unstack(const CArray& a) {
  if (a.ndim() != 3 || a.shape(1) != a.shape(2)) throw DimensionError("expected an array of shape (n, d, d)");
  const auto d = static_cast<std::size_t>(a.shape(1));
  std::vector<Operator> out;
  for (py::ssize_t k = 0; k < a.shape(0); ++k) {
    const complex* src = a.data() + static_cast<std::size_t>(k) * d * d;
    out.emplace_back(d, std::vector<complex>(src, src + d * d));
  }
  return out;
}

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Trajectory make_trajectory(const CArray& samples, const TimeGrid& grid, TrajectoryKind kind) {
  return Trajectory{grid, unstack(samples), kind};
}

}  // namespace

PYBIND11_MODULE(_weakinv, m) {
  m.doc() = "Open-system dynamics, weak invariants and the auxiliary-operator action";

  // the most recently registered translator is tried first
  auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", py::make_tuple(base, py::handle(PyExc_ValueError)));
  py::register_exception<IntegrationError>(m, "IntegrationError",
                                           py::make_tuple(base, py::handle(PyExc_ArithmeticError)));

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<double, double, std::size_t>(), py::arg("t_start"), py::arg("t_end"), py::arg("n_steps"))
      .def_property_readonly("t_start", &TimeGrid::t_start)
      .def_property_readonly("t_end", &TimeGrid::t_end)
      .def_property_readonly("n_steps", &TimeGrid::n_steps)
      .def_property_readonly("dt", &TimeGrid::dt)
      .def("nodes", &TimeGrid::nodes)
      .def("__repr__", [](const TimeGrid& g) {
        return "TimeGrid(" + format_double(g.t_start()) + ", " + format_double(g.t_end()) + ", " +
               std::to_string(g.n_steps()) + ")";
      });

  py::class_<LindbladModel>(m, "Model")
      .def_static(
          "from_json", [](const std::string& text) { return parse_model(json::parse(text)); }, py::arg("text"))
      .def_readonly("dim", &LindbladModel::dim)
      .def(
          "hamiltonian", [](const LindbladModel& model, double t) { return to_array(snapshot(model, t).h); },
          py::arg("t"))
      .def(
          "validate",
          [](const LindbladModel& model, const std::vector<double>& times) { return validate(model, times).summary(); },
          py::arg("times"));

  py::class_<ScenarioSpec>(m, "Scenario")
      .def_readonly("name", &ScenarioSpec::name)
      .def_readonly("model", &ScenarioSpec::model)
      .def_readonly("grid", &ScenarioSpec::default_grid)
      .def_property_readonly("rho0", [](const ScenarioSpec& s) { return to_array(s.default_rho0); })
      .def_property_readonly("invariant_seed", [](const ScenarioSpec& s) { return to_array(s.default_invariant_seed); })
      .def_property_readonly("leakage_level", &ScenarioSpec::leakage_level);

  m.def("scenario_names", &scenario_names);
  m.def("make_scenario", &make_scenario, py::arg("name"));
  m.def("amplitude_damping_qubit", &amplitude_damping_qubit, py::arg("omega"), py::arg("gamma"));
  m.def("dephasing_qubit", &dephasing_qubit, py::arg("omega"), py::arg("gamma"));
  m.def(
      "damped_oscillator",
      [](std::size_t n, double omega, double gamma) { return damped_oscillator(n, omega, gamma); },
      py::arg("n_trunc"), py::arg("omega"), py::arg("gamma"));

  m.def(
      "hermitian_eigenvalues", [](const CArray& a) { return hermitian_eigenvalues(to_operator(a)); }, py::arg("a"));

  m.def(
      "apply_liouvillian",
      [](const LindbladModel& model, double t, const CArray& rho) {
        return to_array(apply_liouvillian(snapshot(model, t), to_operator(rho)));
      },
      py::arg("model"), py::arg("t"), py::arg("rho"));
  m.def(
      "apply_adjoint",
      [](const LindbladModel& model, double t, const CArray& a) {
        return to_array(apply_adjoint(snapshot(model, t), to_operator(a)));
      },
      py::arg("model"), py::arg("t"), py::arg("a"));
  m.def(
      "liouvillian_matrix",
      [](const LindbladModel& model, double t) { return to_array(build_liouvillian_matrix(snapshot(model, t)).matrix); },
      py::arg("model"), py::arg("t"));

  m.def(
      "integrate_state",
      [](const LindbladModel& model, const CArray& rho0, const TimeGrid& grid, const std::string& method,
         std::optional<std::size_t> leakage_level) {
        const StateResult r = integrate_state(model, to_operator(rho0), grid, parse_method(method), {leakage_level});
        return py::make_tuple(stack(r.trajectory.samples), to_python(to_json(r.monitors)));
      },
      py::arg("model"), py::arg("rho0"), py::arg("grid"), py::arg("method") = "rk4",
      py::arg("leakage_level") = py::none());

  m.def(
      "integrate_invariant",
      [](const LindbladModel& model, const CArray& seed, const TimeGrid& grid, const std::string& seed_time,
         const std::string& method) {
        if (seed_time != "start" && seed_time != "end") throw ConfigError("seed_time: expected 'start' or 'end'");
        const SeedTime when = seed_time == "start" ? SeedTime::kStart : SeedTime::kEnd;
        return stack(integrate_invariant(model, to_operator(seed), when, grid, parse_method(method)).samples);
      },
      py::arg("model"), py::arg("seed"), py::arg("grid"), py::arg("seed_time") = "start", py::arg("method") = "rk4");

  m.def(
      "conservation_series",
      [](const CArray& inv, const CArray& state, const TimeGrid& grid) {
        return conservation_series(make_trajectory(inv, grid, TrajectoryKind::kInvariant),
                                   make_trajectory(state, grid, TrajectoryKind::kState));
      },
      py::arg("invariant"), py::arg("state"), py::arg("grid"));

  m.def(
      "analyze",
      [](const CArray& inv, const CArray& state, const TimeGrid& grid, double strong_threshold) {
        return to_python(to_json(analyze(make_trajectory(inv, grid, TrajectoryKind::kInvariant),
                                         make_trajectory(state, grid, TrajectoryKind::kState), strong_threshold)));
      },
      py::arg("invariant"), py::arg("state"), py::arg("grid"), py::arg("strong_threshold") = kDefaultStrongThreshold);

  m.def(
      "evaluate_action",
      [](const LindbladModel& model, const CArray& rho, const CArray& lam, const TimeGrid& grid) {
        return evaluate_action(DiscretizedPath{grid, unstack(rho), unstack(lam)}, model);
      },
      py::arg("model"), py::arg("rho"), py::arg("lam"), py::arg("grid"));

  m.def(
      "stationarity_check",
      [](const LindbladModel& model, const CArray& rho0, const CArray& lam_final, const TimeGrid& grid,
         const std::string& method) {
        const StationarityResult r =
            stationarity_check(model, to_operator(rho0), to_operator(lam_final), grid, parse_method(method));
        return py::make_tuple(to_python(to_json(r.report)), stack(r.path.rho), stack(r.path.lam));
      },
      py::arg("model"), py::arg("rho0"), py::arg("lam_final"), py::arg("grid"), py::arg("method") = "rk4");

  m.def(
      "gauge_shift_check",
      [](const LindbladModel& model, const CArray& rho, const CArray& lam, const TimeGrid& grid, double lam_const) {
        const GaugeShiftResult g = gauge_shift_check(DiscretizedPath{grid, unstack(rho), unstack(lam)}, model, lam_const);
        py::dict d;
        d["delta_action"] = g.delta_action;
        d["constraint_integral"] = g.constraint_integral;
        d["defect"] = g.defect;
        d["final_condition_unchanged"] = g.final_condition_unchanged;
        return d;
      },
      py::arg("model"), py::arg("rho"), py::arg("lam"), py::arg("grid"), py::arg("multiplier"));

  m.def(
      "run_verification",
      [](std::uint64_t seed, std::size_t trials, bool break_adjoint) {
        py::gil_scoped_release release;
        const VerifyReport r = run_verification({seed, trials, break_adjoint});
        py::gil_scoped_acquire acquire;
        return to_python(to_json(r));
      },
      py::arg("seed") = 0, py::arg("trials") = 100, py::arg("break_adjoint") = false);
}
