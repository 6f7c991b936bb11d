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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weakinv/dynamics.hpp"
#include "weakinv/model.hpp"

namespace weakinv {

struct ScenarioSpec {
  std::string name;
  LindbladModel model;
  Operator default_rho0;
  Operator default_invariant_seed;
  TimeGrid default_grid;
  std::optional<std::size_t> truncation_dim;

  /// Top Fock level for truncated scenarios.
  std::optional<std::size_t> leakage_level() const {
    if (!truncation_dim) return std::nullopt;
    return *truncation_dim - 1;
  }
};

namespace ops {

Operator sigma_x();
Operator sigma_y();
Operator sigma_z();
/// |0><1|, lowers |1> to |0>.
Operator sigma_minus();
Operator sigma_plus();
/// Truncated annihilation operator, a|n> = sqrt(n)|n-1>.
Operator annihilation(std::size_t n_levels);
Operator number(std::size_t n_levels);
Operator basis_projector(std::size_t n_levels, std::size_t level);

}  // namespace ops

/// H = omega |1><1|, one channel (sigma_minus, gamma). Defaults: rho0 = |1><1|,
/// seed sigma_z, grid [0, 5] with 5000 steps.
ScenarioSpec amplitude_damping_qubit(double omega, double gamma);

/// H = (omega/2) sigma_z, one channel (sigma_z, gamma). Coherences decay at
/// 4 gamma. Defaults: rho0 = |+><+|, seed sigma_x, grid [0, 5] with 5000 steps.
ScenarioSpec dephasing_qubit(double omega, double gamma);

/// H(t) = omega(t) (a^+ a + 1/2), one channel (a, gamma(t)) on n_trunc Fock
/// levels. Default rho0 is the truncated coherent state with amplitudes
/// proportional to (1, 1, 1/sqrt2, 1/sqrt6); seed H(0); grid [0, 3] with
/// 3000 steps.
ScenarioSpec damped_oscillator(std::size_t n_trunc, const ScalarSchedule& omega,
                               const ScalarSchedule& gamma);

/// Names addressable from the command line.
std::vector<std::string> scenario_names();
/// Builds a named scenario with its default parameters.
ScenarioSpec make_scenario(const std::string& name);

}  // namespace weakinv
