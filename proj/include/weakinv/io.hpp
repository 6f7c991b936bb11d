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

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakinv/action.hpp"
#include "weakinv/dynamics.hpp"
#include "weakinv/invariant.hpp"
#include "weakinv/linalg.hpp"
#include "weakinv/model.hpp"

namespace weakinv {

using json = nlohmann::json;

/// Malformed configuration. The message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Matrix literal: row-major array of [re, im] pairs; dimension is the
/// square root of the length.
Operator parse_matrix(const json& literal, const std::string& field = "matrix");
json matrix_to_json(const Operator& op);

/// Scalar schedule object:
///   number
///   {"kind": "constant", "value": x}
///   {"kind": "sinusoidal", "offset": c0, "amplitude": c1, "frequency": w, "phase": phi}
///   {"kind": "tabulated", "times": [...], "values": [...]}
ScalarSchedule parse_scalar_schedule(const json& j, const std::string& field);

/// Operator schedule object:
///   matrix literal
///   {"kind": "constant", "value": literal}
///   {"kind": "tabulated", "times": [...], "values": [literal, ...]}
///   {"kind": "scaled", "coefficient": scalar schedule, "value": literal}
OperatorSchedule parse_operator_schedule(const json& j, const std::string& field);

/// {"dim": n, "hamiltonian": schedule, "channels": [{"op": schedule, "alpha": schedule}]}
LindbladModel parse_model(const json& j);

/// Header: t, re_00, im_00, re_01, ... (row-major); 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Header: t, lambda_1, ..., lambda_dim.
void write_spectrum_csv(std::ostream& out, const SpectrumSeries& series);
/// Header: t, expectation.
void write_expectation_csv(std::ostream& out, const TimeGrid& grid, const std::vector<double>& values);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

json to_json(const TimeGrid& grid);
json to_json(const MonitorReport& report, const MonitorBounds& bounds = {});
json to_json(const InvariantReport& report);
json to_json(const ActionReport& report);

}  // namespace weakinv
