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
#include <variant>
#include <vector>

#include "weakinv/linalg.hpp"

namespace weakinv {

/// Raised when a schedule is queried outside its tabulated range.
class ScheduleRangeError : public Error {
 public:
  using Error::Error;
};

/// Real-valued function of time: constant, c0 + c1 sin(w t + phi), or a
/// linearly interpolated table. Tables never extrapolate.
class ScalarSchedule {
 public:
  struct Constant {
    double value = 0.0;
  };
  struct Sinusoidal {
    double offset = 0.0;
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase = 0.0;
  };
  struct Tabulated {
    std::vector<double> times;
    std::vector<double> values;
  };

  ScalarSchedule() = default;
  ScalarSchedule(double value) : kind_(Constant{value}) {}  // NOLINT: implicit by intent
  static ScalarSchedule constant(double value) { return ScalarSchedule(value); }
  static ScalarSchedule sinusoidal(double offset, double amplitude, double frequency,
                                   double phase = 0.0);
  static ScalarSchedule tabulated(std::vector<double> times, std::vector<double> values);

  double operator()(double t) const;

  bool is_constant() const { return std::holds_alternative<Constant>(kind_); }
  /// Upper bound on |value| over the schedule's domain.
  double max_abs() const;
  /// [lo, hi] where queries are allowed; infinite for analytic kinds.
  std::pair<double, double> domain() const;

  const std::string& name() const { return name_; }
  ScalarSchedule& named(std::string name) {
    name_ = std::move(name);
    return *this;
  }

  const auto& kind() const { return kind_; }

 private:
  std::variant<Constant, Sinusoidal, Tabulated> kind_ = Constant{};
  std::string name_ = "schedule";
};

/// Operator-valued function of time. Entrywise sinusoids are not offered;
/// time dependence is either tabulated or a scalar schedule times a fixed
/// operator.
class OperatorSchedule {
 public:
  struct Constant {
    Operator value;
  };
  struct Tabulated {
    std::vector<double> times;
    std::vector<Operator> values;
  };
  struct Scaled {
    ScalarSchedule coefficient;
    Operator base;
  };

  OperatorSchedule() = default;
  OperatorSchedule(Operator value);  // NOLINT: implicit by intent
  static OperatorSchedule constant(Operator value) { return OperatorSchedule(std::move(value)); }
  static OperatorSchedule tabulated(std::vector<double> times, std::vector<Operator> values);
  static OperatorSchedule scaled(ScalarSchedule coefficient, Operator base);

  Operator operator()(double t) const;
  std::size_t dim() const;
  bool is_constant() const { return std::holds_alternative<Constant>(kind_); }
  std::pair<double, double> domain() const;

  const std::string& name() const { return name_; }
  OperatorSchedule& named(std::string name) {
    name_ = std::move(name);
    return *this;
  }

  const auto& kind() const { return kind_; }

 private:
  std::variant<Constant, Tabulated, Scaled> kind_;
  std::string name_ = "schedule";
};

struct Channel {
  OperatorSchedule op;
  ScalarSchedule alpha;
};

/// Time-dependent Lindblad model (H(t), {L_n(t)}, {alpha_n(t)}).
struct LindbladModel {
  std::size_t dim = 0;
  OperatorSchedule hamiltonian;
  std::vector<Channel> channels;

  /// Gives schedules stable names ("hamiltonian", "channels[n].op", ...)
  /// and checks that every operator has dimension `dim`.
  LindbladModel& finalize();
};

struct ChannelSnapshot {
  Operator l;
  Operator l_dag;
  Operator l_dag_l;
  double alpha = 0.0;
};

/// A model evaluated at one instant, with L^dagger and L^dagger L cached.
struct ModelSnapshot {
  double t = 0.0;
  Operator h;
  std::vector<ChannelSnapshot> channels;

  std::size_t dim() const { return h.dim(); }
  /// max|H| + sum_n alpha_n max|L_n|^2, a scale for roundoff bounds.
  double generator_scale() const;
};

ModelSnapshot snapshot(const LindbladModel& model, double t);

struct ValidationIssue {
  enum class Kind { kHermiticity, kNegativeRate, kDimension, kRange };
  Kind kind;
  double t;
  std::string schedule;
  double magnitude;  // Hermiticity defect or the offending rate
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate(const LindbladModel& model, const std::vector<double>& sample_times);

}  // namespace weakinv
