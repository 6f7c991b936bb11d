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

#include <vector>

#include "weakinv/dynamics.hpp"
#include "weakinv/linalg.hpp"
#include "weakinv/model.hpp"

namespace weakinv {

/// Paired state and auxiliary-operator samples on a common grid.
///
/// Both sequences are Hermitian. The auxiliary operator is neither
/// normalized nor positive.
struct DiscretizedPath {
  TimeGrid grid;
  std::vector<Operator> rho;
  std::vector<Operator> lam;

  /// Lengths, dimensions and Hermiticity. Throws Error on violation.
  void check_structure() const;
  /// max_k |tr rho_k - tr rho_0|.
  double trace_drift() const;
};

/// Midpoint discretization of the action
///
///   S = -sum_k dt tr[((lam_{k+1} - lam_k)/dt - i L*(lam_bar_k; t_bar_k)) rho_bar_k]
///       - tr(lam_0 rho_0)
///
/// with bars denoting averages of the two step endpoints. The imaginary part
/// is checked against 1e-10 * (1 + |Re S|) and dropped.
double evaluate_action(const DiscretizedPath& path, const LindbladModel& model);

/// dS/d(rho_k) as operators G_k with dS = sum_k tr(G_k d(rho_k)) for
/// Hermitian variations. Node 0 carries the -lam_0 boundary term.
std::vector<Operator> grad_rho(const DiscretizedPath& path, const LindbladModel& model);

/// dS/d(lam_k). The last node carries the -rho_N boundary term; the
/// boundary contribution at node 0 cancels against -tr(lam_0 rho_0).
std::vector<Operator> grad_lam(const DiscretizedPath& path, const LindbladModel& model);

/// max over interior nodes of maxabs(G_k) / dt.
double interior_residual(const std::vector<Operator>& gradient, const TimeGrid& grid);

struct ActionReport {
  double action_value = 0.0;
  double grad_rho_residual = 0.0;
  double grad_lam_residual = 0.0;
  double boundary_rho_term = 0.0;  // maxabs of the node-0 rho gradient
  double boundary_lam_term = 0.0;  // maxabs of the node-N lam gradient
  double boundary_rho_pairing_defect = 0.0;  // maxabs(G_0 + lam_0)
  double boundary_lam_pairing_defect = 0.0;  // maxabs(H_N + rho_N)
  TimeGrid grid{0.0, 1.0, 1};
};

ActionReport make_report(const DiscretizedPath& path, const LindbladModel& model);

struct StationarityResult {
  ActionReport report;
  DiscretizedPath path;
};

/// Integrates rho forward from rho0 and lam backward from lam_final, then
/// reports the action and the gradient residuals of the resulting pair.
StationarityResult stationarity_check(const LindbladModel& model, const Operator& rho0,
                                      const Operator& lam_final, const TimeGrid& grid,
                                      Method method = Method::kRk4);

/// lam_k + (sum_{j>=k} dt * lambda(t_bar_j)) * identity; the last node is
/// copied unchanged.
DiscretizedPath gauge_shift(const DiscretizedPath& path, const ScalarSchedule& lambda);

struct GaugeShiftResult {
  double delta_action = 0.0;        // S[rho, lam'] - S[rho, lam]
  double constraint_integral = 0.0; // sum_k dt lambda(t_bar_k) (tr rho_bar_k - tr rho_0)
  double defect = 0.0;              // |delta_action - constraint_integral|
  bool final_condition_unchanged = false;
};

GaugeShiftResult gauge_shift_check(const DiscretizedPath& path, const LindbladModel& model,
                                   const ScalarSchedule& lambda);

}  // namespace weakinv
