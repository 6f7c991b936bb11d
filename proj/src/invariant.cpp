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

#include "weakinv/invariant.hpp"

#include <algorithm>
#include <cmath>

namespace weakinv {

std::string to_string(InvariantClass c) {
  return c == InvariantClass::kStrongLike ? "strong-like" : "weak";
}

SpectrumSeries spectrum_series(const Trajectory& inv) {
  SpectrumSeries out{inv.grid, {}, std::vector<double>(inv.dim(), 0.0)};
  out.eigenvalues.reserve(inv.samples.size());
  for (std::size_t k = 0; k < inv.samples.size(); ++k) {
    try {
      out.eigenvalues.push_back(hermitian_eigenvalues(inv.samples[k]));
    } catch (const Error& e) {
      throw Error("spectrum_series: node " + std::to_string(k) + ": " + e.what());
    }
    if (k == 0) continue;
    const auto& prev = out.eigenvalues[k - 1];
    const auto& cur = out.eigenvalues[k];
    for (std::size_t j = 0; j < cur.size(); ++j) out.total_variation[j] += std::abs(cur[j] - prev[j]);
  }
  return out;
}

InvariantReport analyze(const Trajectory& inv, const Trajectory& state, double strong_threshold) {
  const std::vector<double> series = conservation_series(inv, state);
  InvariantReport report;
  report.strong_threshold = strong_threshold;
  for (double v : series)
    report.max_expectation_drift = std::max(report.max_expectation_drift, std::abs(v - series.front()));

  report.spectrum_total_variation = spectrum_series(inv).total_variation;
  const double worst = *std::max_element(report.spectrum_total_variation.begin(),
                                         report.spectrum_total_variation.end());
  report.classification = worst <= strong_threshold * max_abs(inv.seed())
                              ? InvariantClass::kStrongLike
                              : InvariantClass::kWeak;
  return report;
}

double shift_check(const LindbladModel& model, const Trajectory& inv, double c) {
  if (inv.kind != TrajectoryKind::kInvariant) throw Error("shift_check: expects an invariant trajectory");
  const Operator shifted_seed = inv.seed() + Operator::identity(inv.dim()) * complex(c);
  const Trajectory shifted = integrate_invariant(model, shifted_seed, inv.seed_time, inv.grid, inv.method);
  double defect = 0.0;
  for (std::size_t k = 0; k < inv.samples.size(); ++k) {
    Operator expected = inv.samples[k];
    for (std::size_t j = 0; j < expected.dim(); ++j) expected(j, j) += c;
    defect = std::max(defect, max_abs_diff(shifted.samples[k], expected));
  }
  return defect;
}

}  // namespace weakinv
