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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "weakinv/linalg.hpp"
#include "weakinv/model.hpp"

namespace weakinv {

/// Uniform grid t_k = t_start + k * dt, k = 0..n_steps.
class TimeGrid {
 public:
  TimeGrid(double t_start, double t_end, std::size_t n_steps);

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  std::size_t n_steps() const { return n_steps_; }
  std::size_t n_nodes() const { return n_steps_ + 1; }
  double dt() const { return (t_end_ - t_start_) / static_cast<double>(n_steps_); }
  /// Node time; node(n_steps) is exactly t_end.
  double node(std::size_t k) const;
  /// Midpoint of step k, (node(k) + node(k+1)) / 2.
  double midpoint(std::size_t k) const { return 0.5 * (node(k) + node(k + 1)); }
  std::vector<double> nodes() const;
  /// Nodes and step midpoints: every time an integrator samples the model.
  std::vector<double> sample_times() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t_start_;
  double t_end_;
  std::size_t n_steps_;
};

enum class Method { kRk4, kMidpoint };
enum class TrajectoryKind { kState, kInvariant };
enum class SeedTime { kStart, kEnd };

std::string to_string(Method m);
Method parse_method(const std::string& name);

struct Trajectory {
  TimeGrid grid;
  std::vector<Operator> samples;  // one per node
  TrajectoryKind kind = TrajectoryKind::kState;
  SeedTime seed_time = SeedTime::kStart;
  Method method = Method::kRk4;

  std::size_t dim() const { return samples.front().dim(); }
  const Operator& seed() const {
    return seed_time == SeedTime::kStart ? samples.front() : samples.back();
  }
};

/// Raised when integration produces non-finite values or exceeds the
/// magnitude cap. Carries the step index where it happened.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, std::size_t step, double magnitude)
      : Error(what), step_(step), magnitude_(magnitude) {}
  std::size_t step() const { return step_; }
  double magnitude() const { return magnitude_; }

 private:
  std::size_t step_;
  double magnitude_;
};

struct MonitorBounds {
  double trace_drift = 1e-10;
  double min_eigenvalue = -1e-8;
  double leakage = 1e-6;
};

struct MonitorReport {
  double max_trace_drift = 0.0;         // max_k |tr rho_k - 1|
  double max_hermiticity_defect = 0.0;  // before per-step re-symmetrization
  double min_eigenvalue = 0.0;
  std::optional<double> max_leakage;    // population of the watched level
  std::optional<std::size_t> leakage_level;

  bool trace_ok(const MonitorBounds& b = {}) const { return max_trace_drift <= b.trace_drift; }
  bool positivity_ok(const MonitorBounds& b = {}) const { return min_eigenvalue >= b.min_eigenvalue; }
  bool leakage_ok(const MonitorBounds& b = {}) const {
    return !max_leakage || *max_leakage <= b.leakage;
  }
  bool ok(const MonitorBounds& b = {}) const {
    return trace_ok(b) && positivity_ok(b) && leakage_ok(b);
  }
};

struct StateOptions {
  /// Basis level whose population is reported as leakage (top Fock level).
  std::optional<std::size_t> leakage_level;
};

struct StateResult {
  Trajectory trajectory;
  MonitorReport monitors;
};

/// Maximum magnitude an invariant may reach before integration aborts.
inline constexpr double kInvariantMagnitudeCap = 1e12;

/// Integrates d(rho)/dt = -i L(rho) node to node.
StateResult integrate_state(const LindbladModel& model, const Operator& rho0, const TimeGrid& grid,
                            Method method = Method::kRk4, const StateOptions& options = {});

/// Integrates dI/dt = +i L*(I), forward from t_start or backward from t_end.
Trajectory integrate_invariant(const LindbladModel& model, const Operator& seed, SeedTime seed_time,
                               const TimeGrid& grid, Method method = Method::kRk4);

/// <I>(t_k) = Re tr(I(t_k) rho(t_k)) per node.
std::vector<double> conservation_series(const Trajectory& inv, const Trajectory& state);

/// Throws unless `rho` is Hermitian, unit-trace and positive within 1e-10.
void check_density(const Operator& rho);

}  // namespace weakinv
