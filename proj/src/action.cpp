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

#include "weakinv/action.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weakinv/superop.hpp"

namespace weakinv {

namespace {

const complex kI{0.0, 1.0};

Operator average(const Operator& a, const Operator& b) {
  Operator out = a + b;
  out *= 0.5;
  return out;
}

// Range and dimension problems surface here rather than mid-sum.
void check_inputs(const DiscretizedPath& path, const LindbladModel& model) {
  path.check_structure();
  if (path.rho.front().dim() != model.dim) throw DimensionError("path dim differs from model dim");
  const ValidationReport report = validate(model, path.grid.sample_times());
  if (!report.ok()) throw Error("model invalid on path grid: " + report.issues.front().message);
}

}  // namespace

void DiscretizedPath::check_structure() const {
  const std::size_t n = grid.n_nodes();
  if (rho.size() != n || lam.size() != n) {
    std::ostringstream msg;
    msg << "path needs " << n << " nodes, got rho " << rho.size() << " and lam " << lam.size();
    throw Error(msg.str());
  }
  const std::size_t d = rho.front().dim();
  for (std::size_t k = 0; k < n; ++k) {
    if (rho[k].dim() != d || lam[k].dim() != d) throw DimensionError("path operators differ in dim");
    if (!is_hermitian(rho[k], 1e-10) || !is_hermitian(lam[k], 1e-10))
      throw Error("path node " + std::to_string(k) + " is not Hermitian");
  }
}

double DiscretizedPath::trace_drift() const {
  const complex t0 = trace(rho.front());
  double drift = 0.0;
  for (const auto& r : rho) drift = std::max(drift, std::abs(trace(r) - t0));
  return drift;
}

double evaluate_action(const DiscretizedPath& path, const LindbladModel& model) {
  check_inputs(path, model);
  const TimeGrid& g = path.grid;
  const double dt = g.dt();

  // Long-double accumulation keeps summation error below the per-term error,
  // which finite-difference checks of single-node perturbations rely on.
  long double re = 0.0L;
  long double im = 0.0L;
  auto accumulate = [&](complex v) {
    re += static_cast<long double>(v.real());
    im += static_cast<long double>(v.imag());
  };

  for (std::size_t k = 0; k < g.n_steps(); ++k) {
    const ModelSnapshot s = snapshot(model, g.midpoint(k));
    const Operator lam_bar = average(path.lam[k], path.lam[k + 1]);
    const Operator rho_bar = average(path.rho[k], path.rho[k + 1]);
    const complex increment = expectation(path.lam[k + 1] - path.lam[k], rho_bar);
    const complex generator = expectation(apply_adjoint(s, lam_bar), rho_bar);
    accumulate(-(increment - kI * dt * generator));
  }
  accumulate(-expectation(path.lam.front(), path.rho.front()));

  const double action = static_cast<double>(re);
  const double imag = static_cast<double>(im);
  if (std::abs(imag) > 1e-10 * (1.0 + std::abs(action))) {
    std::ostringstream msg;
    msg << "action has imaginary part " << imag << " (non-Hermitian path or model defect)";
    throw Error(msg.str());
  }
  return action;
}

std::vector<Operator> grad_rho(const DiscretizedPath& path, const LindbladModel& model) {
  check_inputs(path, model);
  const TimeGrid& g = path.grid;
  const double dt = g.dt();
  const std::size_t d = model.dim;
  std::vector<Operator> grad(g.n_nodes(), Operator(d));

  for (std::size_t k = 0; k < g.n_steps(); ++k) {
    const ModelSnapshot s = snapshot(model, g.midpoint(k));
    // -1/2 [(lam_{k+1} - lam_k) - i dt L*(lam_bar_k)] reaches both endpoints
    Operator b = path.lam[k + 1] - path.lam[k];
    b.add_scaled(-kI * dt, apply_adjoint(s, average(path.lam[k], path.lam[k + 1])));
    b *= -0.5;
    grad[k] += b;
    grad[k + 1] += b;
  }
  grad.front() -= path.lam.front();
  for (auto& op : grad) op = hermitian_part(op);
  return grad;
}

std::vector<Operator> grad_lam(const DiscretizedPath& path, const LindbladModel& model) {
  check_inputs(path, model);
  const TimeGrid& g = path.grid;
  const double dt = g.dt();
  const std::size_t d = model.dim;
  std::vector<Operator> grad(g.n_nodes(), Operator(d));

  for (std::size_t k = 0; k < g.n_steps(); ++k) {
    const ModelSnapshot s = snapshot(model, g.midpoint(k));
    const Operator rho_bar = average(path.rho[k], path.rho[k + 1]);
    const Operator gen = apply_liouvillian(s, rho_bar) * (0.5 * kI * dt);
    grad[k] += rho_bar;
    grad[k] += gen;
    grad[k + 1] -= rho_bar;
    grad[k + 1] += gen;
  }
  grad.front() -= path.rho.front();
  for (auto& op : grad) op = hermitian_part(op);
  return grad;
}

double interior_residual(const std::vector<Operator>& gradient, const TimeGrid& grid) {
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < gradient.size(); ++k) worst = std::max(worst, max_abs(gradient[k]));
  return worst / grid.dt();
}

ActionReport make_report(const DiscretizedPath& path, const LindbladModel& model) {
  ActionReport report;
  report.grid = path.grid;
  report.action_value = evaluate_action(path, model);
  const auto gr = grad_rho(path, model);
  const auto gl = grad_lam(path, model);
  report.grad_rho_residual = interior_residual(gr, path.grid);
  report.grad_lam_residual = interior_residual(gl, path.grid);
  report.boundary_rho_term = max_abs(gr.front());
  report.boundary_lam_term = max_abs(gl.back());
  report.boundary_rho_pairing_defect = max_abs(gr.front() + path.lam.front());
  report.boundary_lam_pairing_defect = max_abs(gl.back() + path.rho.back());
  return report;
}

StationarityResult stationarity_check(const LindbladModel& model, const Operator& rho0,
                                      const Operator& lam_final, const TimeGrid& grid,
                                      Method method) {
  StateResult state = integrate_state(model, rho0, grid, method);
  Trajectory lam = integrate_invariant(model, lam_final, SeedTime::kEnd, grid, method);
  DiscretizedPath path{grid, std::move(state.trajectory.samples), std::move(lam.samples)};
  if (path.trace_drift() > 1e-8) throw Error("stationarity_check: state path does not preserve trace");
  ActionReport report = make_report(path, model);
  return {report, std::move(path)};
}

DiscretizedPath gauge_shift(const DiscretizedPath& path, const ScalarSchedule& lambda) {
  path.check_structure();
  const TimeGrid& g = path.grid;
  const double dt = g.dt();
  DiscretizedPath out = path;
  double tail = 0.0;  // integral of lambda over [t_k, t_f]
  for (std::size_t k = g.n_steps(); k-- > 0;) {
    tail += dt * lambda(g.midpoint(k));
    for (std::size_t j = 0; j < out.lam[k].dim(); ++j) out.lam[k](j, j) += tail;
  }
  return out;
}

GaugeShiftResult gauge_shift_check(const DiscretizedPath& path, const LindbladModel& model,
                                   const ScalarSchedule& lambda) {
  const TimeGrid& g = path.grid;
  const double dt = g.dt();
  const DiscretizedPath shifted = gauge_shift(path, lambda);

  GaugeShiftResult result;
  result.final_condition_unchanged = shifted.lam.back() == path.lam.back();
  result.delta_action = evaluate_action(shifted, model) - evaluate_action(path, model);

  const double tr0 = trace(path.rho.front()).real();
  long double integral = 0.0L;
  for (std::size_t k = 0; k < g.n_steps(); ++k) {
    const double tr_bar = 0.5 * (trace(path.rho[k]).real() + trace(path.rho[k + 1]).real());
    integral += static_cast<long double>(dt * lambda(g.midpoint(k)) * (tr_bar - tr0));
  }
  result.constraint_integral = static_cast<double>(integral);
  result.defect = std::abs(result.delta_action - result.constraint_integral);
  return result;
}

}  // namespace weakinv
