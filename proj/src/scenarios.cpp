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

#include "weakinv/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace weakinv {

namespace ops {

Operator sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
Operator sigma_y() { return {{0.0, complex(0, -1)}, {complex(0, 1), 0.0}}; }
Operator sigma_z() { return Operator::diag({1.0, -1.0}); }
Operator sigma_minus() { return {{0.0, 1.0}, {0.0, 0.0}}; }
Operator sigma_plus() { return {{0.0, 0.0}, {1.0, 0.0}}; }

Operator annihilation(std::size_t n_levels) {
  Operator a(n_levels);
  for (std::size_t n = 1; n < n_levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Operator number(std::size_t n_levels) {
  Operator out(n_levels);
  for (std::size_t n = 0; n < n_levels; ++n) out(n, n) = static_cast<double>(n);
  return out;
}

Operator basis_projector(std::size_t n_levels, std::size_t level) {
  Operator out(n_levels);
  out(level, level) = 1.0;
  return out;
}

}  // namespace ops

namespace {

void require_rate(double gamma) {
  if (!(gamma >= 0.0)) throw Error("gamma must be >= 0");
}

}  // namespace

ScenarioSpec amplitude_damping_qubit(double omega, double gamma) {
  require_rate(gamma);
  LindbladModel model;
  model.dim = 2;
  model.hamiltonian = Operator::diag({0.0, omega});
  model.channels.push_back({ops::sigma_minus(), gamma});
  model.finalize();
  return {"amp-damp",       std::move(model), ops::basis_projector(2, 1),
          ops::sigma_z(),   TimeGrid(0.0, 5.0, 5000), std::nullopt};
}

ScenarioSpec dephasing_qubit(double omega, double gamma) {
  require_rate(gamma);
  LindbladModel model;
  model.dim = 2;
  model.hamiltonian = ops::sigma_z() * complex(0.5 * omega);
  model.channels.push_back({ops::sigma_z(), gamma});
  model.finalize();
  const double h = 1.0 / std::numbers::sqrt2;
  const complex plus[] = {h, h};
  return {"dephase",      std::move(model), Operator::projector(plus),
          ops::sigma_x(), TimeGrid(0.0, 5.0, 5000), std::nullopt};
}

ScenarioSpec damped_oscillator(std::size_t n_trunc, const ScalarSchedule& omega,
                               const ScalarSchedule& gamma) {
  if (n_trunc < 2) throw Error("n_trunc must be >= 2");
  const TimeGrid grid(0.0, 3.0, 3000);
  for (double t : grid.sample_times())
    if (!(gamma(t) >= 0.0)) throw Error("gamma schedule negative on the default grid");

  Operator level_energy = ops::number(n_trunc);
  for (std::size_t n = 0; n < n_trunc; ++n) level_energy(n, n) += 0.5;

  LindbladModel model;
  model.dim = n_trunc;
  model.hamiltonian = OperatorSchedule::scaled(omega, level_energy);
  model.channels.push_back({ops::annihilation(n_trunc), gamma});
  model.finalize();

  // truncated coherent state, alpha = 1: c_n = 1/sqrt(n!)
  std::vector<complex> psi(n_trunc, 0.0);
  const double amps[] = {1.0, 1.0, 1.0 / std::numbers::sqrt2, 1.0 / std::sqrt(6.0)};
  double norm = 0.0;
  for (std::size_t n = 0; n < 4 && n < n_trunc; ++n) norm += amps[n] * amps[n];
  for (std::size_t n = 0; n < 4 && n < n_trunc; ++n) psi[n] = amps[n] / std::sqrt(norm);

  Operator seed = model.hamiltonian(0.0);
  return {"damped-ho", std::move(model), Operator::projector(psi), std::move(seed), grid, n_trunc};
}

std::vector<std::string> scenario_names() { return {"amp-damp", "dephase", "damped-ho"}; }

ScenarioSpec make_scenario(const std::string& name) {
  if (name == "amp-damp") return amplitude_damping_qubit(1.0, 0.5);
  if (name == "dephase") return dephasing_qubit(1.0, 0.25);
  if (name == "damped-ho")
    return damped_oscillator(20, ScalarSchedule::sinusoidal(1.0, 0.1, 1.0), 0.1);
  throw Error("unknown scenario '" + name + "' (expected amp-damp, dephase or damped-ho)");
}

}  // namespace weakinv
