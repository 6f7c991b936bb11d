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

#include <string>
#include <vector>

#include "weakinv/dynamics.hpp"

namespace weakinv {

/// Per-node ascending eigenvalues of an invariant trajectory.
struct SpectrumSeries {
  TimeGrid grid;
  std::vector<std::vector<double>> eigenvalues;
  /// sum_k |lambda_j(t_{k+1}) - lambda_j(t_k)|, matched by sorted index.
  std::vector<double> total_variation;
};

enum class InvariantClass { kStrongLike, kWeak };
std::string to_string(InvariantClass c);

inline constexpr double kDefaultStrongThreshold = 1e-6;

struct InvariantReport {
  double max_expectation_drift = 0.0;
  std::vector<double> spectrum_total_variation;
  InvariantClass classification = InvariantClass::kWeak;
  double strong_threshold = kDefaultStrongThreshold;
};

SpectrumSeries spectrum_series(const Trajectory& inv);

/// Strong-like iff max total variation <= strong_threshold * maxabs(seed).
InvariantReport analyze(const Trajectory& inv, const Trajectory& state,
                        double strong_threshold = kDefaultStrongThreshold);

/// Re-integrates the seed shifted by c * identity on the same grid and
/// returns max_k maxabs(I_shifted(t_k) - (I(t_k) + c)).
double shift_check(const LindbladModel& model, const Trajectory& inv, double c);

}  // namespace weakinv
