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

#include "weakinv/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weakinv/superop.hpp"

namespace weakinv {

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t n_steps)
    : t_start_(t_start), t_end_(t_end), n_steps_(n_steps) {
  if (n_steps == 0) throw Error("grid.n_steps must be >= 1");
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start))
    throw Error("grid.t_end must be greater than grid.t_start");
}

double TimeGrid::node(std::size_t k) const {
  if (k == n_steps_) return t_end_;
  return t_start_ + static_cast<double>(k) * dt();
}

std::vector<double> TimeGrid::nodes() const {
  std::vector<double> out(n_nodes());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = node(k);
  return out;
}

std::vector<double> TimeGrid::sample_times() const {
  std::vector<double> out;
  out.reserve(2 * n_steps_ + 1);
  for (std::size_t k = 0; k < n_steps_; ++k) {
    out.push_back(node(k));
    out.push_back(midpoint(k));
  }
  out.push_back(t_end_);
  return out;
}

std::string to_string(Method m) { return m == Method::kRk4 ? "rk4" : "midpoint"; }

Method parse_method(const std::string& name) {
  if (name == "rk4") return Method::kRk4;
  if (name == "midpoint") return Method::kMidpoint;
  throw Error("method must be 'rk4' or 'midpoint', got '" + name + "'");
}

void check_density(const Operator& rho) {
  const double defect = hermiticity_defect(rho);
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "initial state is not Hermitian (defect " << defect << ")";
    throw Error(msg.str());
  }
  const double tr = trace(rho).real();
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "initial state trace is " << tr << ", expected 1";
    throw Error(msg.str());
  }
  const double lo = hermitian_eigenvalues(rho).front();
  if (lo < -1e-10) {
    std::ostringstream msg;
    msg << "initial state has negative eigenvalue " << lo;
    throw Error(msg.str());
  }
}

namespace {

const complex kI{0.0, 1.0};

void require_valid(const LindbladModel& model, const TimeGrid& grid) {
  const ValidationReport report = validate(model, grid.sample_times());
  if (!report.ok()) throw Error("model invalid on grid: " + report.issues.front().message);
}

// One explicit step of x' = f(snapshot, x) with signed step h.
template <class Rhs>
Operator step(const Rhs& f, const ModelSnapshot& s0, const ModelSnapshot& sm,
              const ModelSnapshot& s1, const Operator& x, double h, Method method) {
  const Operator k1 = f(s0, x);
  if (method == Method::kMidpoint) {
    Operator mid = x;
    mid.add_scaled(0.5 * h, k1);
    Operator out = x;
    out.add_scaled(h, f(sm, mid));
    return out;
  }
  Operator tmp = x;
  tmp.add_scaled(0.5 * h, k1);
  const Operator k2 = f(sm, tmp);
  tmp = x;
  tmp.add_scaled(0.5 * h, k2);
  const Operator k3 = f(sm, tmp);
  tmp = x;
  tmp.add_scaled(h, k3);
  const Operator k4 = f(s1, tmp);

  Operator out = x;
  out.add_scaled(h / 6.0, k1);
  out.add_scaled(h / 3.0, k2);
  out.add_scaled(h / 3.0, k3);
  out.add_scaled(h / 6.0, k4);
  return out;
}

// Visits nodes in integration order and hands each raw step result to
// `accept`, which returns the sample to store.
template <class Rhs, class Accept>
std::vector<Operator> propagate(const LindbladModel& model, const Operator& seed, bool backward,
                                const TimeGrid& grid, Method method, const Rhs& f,
                                const Accept& accept) {
  const std::size_t n = grid.n_steps();
  std::vector<Operator> samples(grid.n_nodes());
  const std::size_t first = backward ? n : 0;
  samples[first] = seed;
  const double h = backward ? -grid.dt() : grid.dt();

  ModelSnapshot current = snapshot(model, grid.node(first));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t from = backward ? n - i : i;
    const std::size_t to = backward ? n - i - 1 : i + 1;
    const ModelSnapshot mid = snapshot(model, grid.midpoint(std::min(from, to)));
    ModelSnapshot next = snapshot(model, grid.node(to));
    Operator raw = step(f, current, mid, next, samples[from], h, method);
    samples[to] = accept(std::move(raw), i + 1);
    current = std::move(next);
  }
  return samples;
}

}  // namespace

StateResult integrate_state(const LindbladModel& model, const Operator& rho0, const TimeGrid& grid,
                            Method method, const StateOptions& options) {
  if (rho0.dim() != model.dim) throw DimensionError("initial state dim differs from model dim");
  check_density(rho0);
  require_valid(model, grid);
  if (options.leakage_level && *options.leakage_level >= model.dim)
    throw Error("leakage level outside the model's basis");

  MonitorReport monitors;
  monitors.leakage_level = options.leakage_level;
  auto observe = [&](const Operator& rho) {
    monitors.max_trace_drift = std::max(monitors.max_trace_drift, std::abs(trace(rho) - 1.0));
    if (options.leakage_level) {
      const double p = rho(*options.leakage_level, *options.leakage_level).real();
      monitors.max_leakage = std::max(monitors.max_leakage.value_or(p), p);
    }
  };

  const Operator start = hermitian_part(rho0);
  observe(start);

  auto rhs = [](const ModelSnapshot& s, const Operator& rho) {
    return apply_liouvillian(s, rho) * (-kI);
  };
  auto accept = [&](Operator raw, std::size_t step_index) {
    if (!all_finite(raw)) {
      throw IntegrationError("state integration produced non-finite values at step " +
                                 std::to_string(step_index),
                             step_index, max_abs(raw));
    }
    monitors.max_hermiticity_defect =
        std::max(monitors.max_hermiticity_defect, hermiticity_defect(raw));
    Operator rho = hermitian_part(raw);
    observe(rho);
    return rho;
  };

  std::vector<Operator> samples = propagate(model, start, false, grid, method, rhs, accept);

  monitors.min_eigenvalue = hermitian_eigenvalues(samples.front()).front();
  for (const auto& rho : samples)
    monitors.min_eigenvalue = std::min(monitors.min_eigenvalue, hermitian_eigenvalues(rho).front());

  Trajectory traj{grid, std::move(samples), TrajectoryKind::kState, SeedTime::kStart, method};
  return {std::move(traj), monitors};
}

Trajectory integrate_invariant(const LindbladModel& model, const Operator& seed, SeedTime seed_time,
                               const TimeGrid& grid, Method method) {
  if (seed.dim() != model.dim) throw DimensionError("invariant seed dim differs from model dim");
  if (!is_hermitian(seed)) {
    std::ostringstream msg;
    msg << "invariant seed must be Hermitian (defect " << hermiticity_defect(seed) << ")";
    throw Error(msg.str());
  }
  require_valid(model, grid);

  auto rhs = [](const ModelSnapshot& s, const Operator& inv) {
    return apply_adjoint(s, inv) * kI;
  };
  auto accept = [](Operator raw, std::size_t step_index) {
    const double magnitude = max_abs(raw);
    if (!all_finite(raw)) {
      throw IntegrationError("invariant integration produced non-finite values at step " +
                                 std::to_string(step_index),
                             step_index, magnitude);
    }
    if (magnitude > kInvariantMagnitudeCap) {
      std::ostringstream msg;
      msg << "invariant magnitude " << magnitude << " exceeds cap " << kInvariantMagnitudeCap
          << " at step " << step_index;
      throw IntegrationError(msg.str(), step_index, magnitude);
    }
    return hermitian_part(raw);
  };

  const bool backward = seed_time == SeedTime::kEnd;
  std::vector<Operator> samples =
      propagate(model, hermitian_part(seed), backward, grid, method, rhs, accept);
  return {grid, std::move(samples), TrajectoryKind::kInvariant, seed_time, method};
}

std::vector<double> conservation_series(const Trajectory& inv, const Trajectory& state) {
  if (!(inv.grid == state.grid)) throw Error("conservation_series: grid mismatch");
  if (inv.kind != TrajectoryKind::kInvariant || state.kind != TrajectoryKind::kState)
    throw Error("conservation_series: expects an invariant and a state trajectory");
  if (inv.dim() != state.dim()) throw DimensionError("conservation_series: dimension mismatch");

  std::vector<double> out(inv.samples.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const complex e = expectation(inv.samples[k], state.samples[k]);
    const double scale = std::max(1.0, max_abs(inv.samples[k]) * max_abs(state.samples[k]) *
                                           static_cast<double>(inv.dim()));
    if (std::abs(e.imag()) > 1e-10 * scale) {
      std::ostringstream msg;
      msg << "conservation_series: expectation has imaginary part " << e.imag() << " at node " << k;
      throw Error(msg.str());
    }
    out[k] = e.real();
  }
  return out;
}

}  // namespace weakinv
