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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "weakinv/dynamics.hpp"
#include "weakinv/io.hpp"
#include "weakinv/scenarios.hpp"

namespace weakinv::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kCheckFailed = 2 };

/// Parsed run configuration. Either `scenario_name` or `inline_model` is set.
struct RunConfig {
  std::optional<std::string> scenario_name;
  std::optional<json> inline_model;
  json params = json::object();  // scenario parameter overrides
  std::optional<json> grid;      // {t_start, t_end, n_steps}
  Method method = Method::kRk4;
  std::optional<json> rho0;
  std::optional<json> invariant_seed;
  std::optional<json> lambda_final;
  std::string output_dir = ".";
  std::uint64_t seed = 0;

  double drift_bound = 1e-8;
  double residual_bound = 1e-4;
  double gauge_bound = 1e-10;
  double strong_threshold = kDefaultStrongThreshold;
  MonitorBounds monitor_bounds;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_run_config(const json& j);

/// Model, defaults and grid after applying parameter overrides.
struct ResolvedRun {
  ScenarioSpec spec;
  TimeGrid grid;
};
ResolvedRun resolve(const RunConfig& config);

/// Named operators ("sz", "sx", "identity", "hamiltonian", "number") or a
/// matrix literal. "hamiltonian" is H evaluated at `t`.
Operator resolve_operator(const json& j, const ResolvedRun& run, double t, const std::string& field);

int cmd_simulate(const RunConfig& config, std::ostream& log);
int cmd_invariant(const RunConfig& config, std::ostream& log);
int cmd_action_check(const RunConfig& config, std::ostream& log);
int cmd_verify(std::uint64_t seed, std::size_t trials, bool break_adjoint,
               const std::string& output_dir, std::ostream& log);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace weakinv::cli
