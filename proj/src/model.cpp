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

#include "weakinv/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace weakinv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_table_times(const std::vector<double>& times, std::size_t n_values) {
  if (times.empty()) throw Error("tabulated schedule needs at least one point");
  if (times.size() != n_values) throw Error("tabulated schedule: times and values differ in length");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw Error("tabulated schedule: non-finite time");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw Error("tabulated schedule: times must be strictly increasing");
  }
}

// Interval index i and weight w with t = (1-w) t_i + w t_{i+1}.
std::pair<std::size_t, double> locate(const std::vector<double>& times, double t,
                                      const std::string& name) {
  if (!(t >= times.front() && t <= times.back())) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "schedule '" << name << "' queried at t=" << t << " outside its table ["
        << times.front() << ", " << times.back() << "]";
    throw ScheduleRangeError(msg.str());
  }
  if (times.size() == 1) return {0, 0.0};
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - times.begin());
  if (hi >= times.size()) hi = times.size() - 1;
  const std::size_t lo = hi - 1;
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  return {lo, w};
}

}  // namespace

ScalarSchedule ScalarSchedule::sinusoidal(double offset, double amplitude, double frequency,
                                          double phase) {
  for (double v : {offset, amplitude, frequency, phase})
    if (!std::isfinite(v)) throw Error("sinusoidal schedule parameters must be finite");
  ScalarSchedule s;
  s.kind_ = Sinusoidal{offset, amplitude, frequency, phase};
  return s;
}

ScalarSchedule ScalarSchedule::tabulated(std::vector<double> times, std::vector<double> values) {
  check_table_times(times, values.size());
  for (double v : values)
    if (!std::isfinite(v)) throw Error("tabulated schedule: non-finite value");
  ScalarSchedule s;
  s.kind_ = Tabulated{std::move(times), std::move(values)};
  return s;
}

double ScalarSchedule::operator()(double t) const {
  return std::visit(
      overloaded{
          [](const Constant& c) { return c.value; },
          [t](const Sinusoidal& s) {
            return s.offset + s.amplitude * std::sin(s.frequency * t + s.phase);
          },
          [&](const Tabulated& tab) {
            auto [i, w] = locate(tab.times, t, name_);
            if (w == 0.0) return tab.values[i];
            return (1.0 - w) * tab.values[i] + w * tab.values[i + 1];
          },
      },
      kind_);
}

double ScalarSchedule::max_abs() const {
  return std::visit(overloaded{
                        [](const Constant& c) { return std::abs(c.value); },
                        [](const Sinusoidal& s) { return std::abs(s.offset) + std::abs(s.amplitude); },
                        [](const Tabulated& tab) {
                          double m = 0.0;
                          for (double v : tab.values) m = std::max(m, std::abs(v));
                          return m;
                        },
                    },
                    kind_);
}

std::pair<double, double> ScalarSchedule::domain() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (const auto* tab = std::get_if<Tabulated>(&kind_)) return {tab->times.front(), tab->times.back()};
  return {-inf, inf};
}

OperatorSchedule::OperatorSchedule(Operator value) : kind_(Constant{std::move(value)}) {}

OperatorSchedule OperatorSchedule::tabulated(std::vector<double> times,
                                             std::vector<Operator> values) {
  check_table_times(times, values.size());
  for (const auto& v : values) require_same_dim(values.front(), v, "tabulated operator schedule");
  OperatorSchedule s;
  s.kind_ = Tabulated{std::move(times), std::move(values)};
  return s;
}

OperatorSchedule OperatorSchedule::scaled(ScalarSchedule coefficient, Operator base) {
  OperatorSchedule s;
  s.kind_ = Scaled{std::move(coefficient), std::move(base)};
  return s;
}

Operator OperatorSchedule::operator()(double t) const {
  return std::visit(overloaded{
                        [](const Constant& c) { return c.value; },
                        [&](const Tabulated& tab) {
                          auto [i, w] = locate(tab.times, t, name_);
                          if (w == 0.0) return tab.values[i];
                          Operator out = tab.values[i] * (1.0 - w);
                          out.add_scaled(w, tab.values[i + 1]);
                          return out;
                        },
                        [t](const Scaled& s) { return s.base * complex(s.coefficient(t)); },
                    },
                    kind_);
}

std::size_t OperatorSchedule::dim() const {
  return std::visit(overloaded{
                        [](const Constant& c) { return c.value.dim(); },
                        [](const Tabulated& tab) { return tab.values.front().dim(); },
                        [](const Scaled& s) { return s.base.dim(); },
                    },
                    kind_);
}

std::pair<double, double> OperatorSchedule::domain() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (const auto* tab = std::get_if<Tabulated>(&kind_)) return {tab->times.front(), tab->times.back()};
  if (const auto* s = std::get_if<Scaled>(&kind_)) return s->coefficient.domain();
  return {-inf, inf};
}

LindbladModel& LindbladModel::finalize() {
  if (dim == 0) throw DimensionError("model dim must be >= 1");
  hamiltonian.named("hamiltonian");
  auto check = [this](std::size_t d, const std::string& what) {
    if (d != dim) {
      std::ostringstream msg;
      msg << what << " has dim " << d << ", model dim is " << dim;
      throw DimensionError(msg.str());
    }
  };
  check(hamiltonian.dim(), "hamiltonian");
  for (std::size_t n = 0; n < channels.size(); ++n) {
    const std::string prefix = "channels[" + std::to_string(n) + "]";
    channels[n].op.named(prefix + ".op");
    channels[n].alpha.named(prefix + ".alpha");
    check(channels[n].op.dim(), prefix + ".op");
  }
  return *this;
}

double ModelSnapshot::generator_scale() const {
  double s = max_abs(h);
  for (const auto& c : channels) {
    const double l = max_abs(c.l);
    s += c.alpha * l * l;
  }
  return s;
}

ModelSnapshot snapshot(const LindbladModel& model, double t) {
  ModelSnapshot s;
  s.t = t;
  s.h = model.hamiltonian(t);
  if (s.h.dim() != model.dim) throw DimensionError("hamiltonian dim differs from model dim");
  s.channels.reserve(model.channels.size());
  for (const auto& ch : model.channels) {
    ChannelSnapshot c;
    c.l = ch.op(t);
    require_same_dim(s.h, c.l, "lindblad operator");
    c.l_dag = dagger(c.l);
    c.l_dag_l = c.l_dag * c.l;
    c.alpha = ch.alpha(t);
    s.channels.push_back(std::move(c));
  }
  return s;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& issue : issues) out << issue.message << "\n";
  return out.str();
}

ValidationReport validate(const LindbladModel& model, const std::vector<double>& sample_times) {
  ValidationReport report;
  using Kind = ValidationIssue::Kind;
  for (double t : sample_times) {
    ModelSnapshot s;
    try {
      s = snapshot(model, t);
    } catch (const ScheduleRangeError& e) {
      report.issues.push_back({Kind::kRange, t, "", 0.0, e.what()});
      continue;
    } catch (const DimensionError& e) {
      report.issues.push_back({Kind::kDimension, t, "", 0.0, e.what()});
      continue;
    }
    const double defect = hermiticity_defect(s.h);
    if (defect > std::max(1e-10 * max_abs(s.h), 1e-14)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "hamiltonian not Hermitian at t=" << t << " (defect " << defect << ")";
      report.issues.push_back({Kind::kHermiticity, t, "hamiltonian", defect, msg.str()});
    }
    for (std::size_t n = 0; n < s.channels.size(); ++n) {
      const double a = s.channels[n].alpha;
      if (!(a >= 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "channels[" << n << "].alpha negative at t=" << t << " (" << a << ")";
        report.issues.push_back(
            {Kind::kNegativeRate, t, "channels[" + std::to_string(n) + "].alpha", a, msg.str()});
      }
    }
  }
  return report;
}

}  // namespace weakinv
