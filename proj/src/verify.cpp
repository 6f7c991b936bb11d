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

#include "weakinv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "weakinv/action.hpp"
#include "weakinv/dynamics.hpp"
#include "weakinv/random.hpp"
#include "weakinv/superop.hpp"

namespace weakinv {

namespace {

const complex kI{0.0, 1.0};

std::size_t trial_dim(std::size_t trial, std::size_t lo, std::size_t hi) {
  return lo + trial % (hi - lo + 1);
}

struct Tracker {
  PropertyResult result;
  Tracker(std::string name, double tolerance) {
    result.name = std::move(name);
    result.tolerance = tolerance;
  }
  void record(double defect) {
    ++result.trials;
    if (!(defect <= result.tolerance)) result.passed = false;
    if (std::isnan(defect) || defect > result.worst_defect) result.worst_defect = defect;
  }
};

// Deliberately wrong: jump term L a L^dagger instead of L^dagger a L.
Operator broken_adjoint(const ModelSnapshot& s, const Operator& a) {
  Operator out = commutator(a, s.h);
  for (const auto& c : s.channels) {
    Operator term = c.l_dag_l * a + a * c.l_dag_l;
    term.add_scaled(-2.0, c.l * a * c.l_dag);
    out.add_scaled(-kI * c.alpha, term);
  }
  return out;
}

PropertyResult adjoint_pairing(Rng& rng, std::size_t trials, bool broken) {
  Tracker t("adjoint_pairing", 1e-12);
  for (std::size_t i = 0; i < 2 * trials; ++i) {
    const std::size_t d = trial_dim(i, 2, 8);
    const LindbladModel model = random_model(rng, d, {.target_scale = rng.uniform(0.5, 5.0)});
    const ModelSnapshot s = snapshot(model, 0.0);
    const Operator a = random_hermitian(rng, d);
    const Operator rho = random_density(rng, d);
    const Operator adj = broken ? broken_adjoint(s, a) : apply_adjoint(s, a);
    const double defect =
        std::abs(expectation(a, apply_liouvillian(s, rho)) - expectation(adj, rho));
    const double scale = std::max(1.0, max_abs(a) * max_abs(rho) * s.generator_scale());
    t.record(defect / scale);
  }
  t.result.detail = "|tr(a L(rho)) - tr(L*(a) rho)| / max(1, |a||rho||L|)";
  return t.result;
}

PropertyResult shift_property(Rng& rng, std::size_t trials) {
  Tracker t("shift_property", 1e-13);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t d = trial_dim(i, 2, 8);
    const ModelSnapshot s = snapshot(random_model(rng, d, {.target_scale = rng.uniform(0.5, 5.0)}), 0.0);
    const Operator a = random_hermitian(rng, d);
    const complex c = i % 2 == 0 ? complex(rng.uniform(-5.0, 5.0), 0.0)
                                 : complex(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
    const Operator shifted = a + Operator::identity(d) * c;
    const double defect = max_abs_diff(apply_adjoint(s, shifted), apply_adjoint(s, a));
    const double scale = std::max(1.0, (max_abs(a) + std::abs(c)) * s.generator_scale());
    t.record(defect / scale);
  }
  t.result.detail = "maxabs(L*(a + c) - L*(a)) / max(1, (|a| + |c|)|L|), real and complex c";
  return t.result;
}

PropertyResult identity_annihilation(Rng& rng, std::size_t trials) {
  Tracker t("adjoint_identity", 1e-14);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t d = trial_dim(i, 2, 8);
    const ModelSnapshot s = snapshot(random_model(rng, d), 0.0);
    t.record(max_abs(apply_adjoint(s, Operator::identity(d))));
  }
  t.result.detail = "maxabs(L*(identity))";
  return t.result;
}

PropertyResult trace_preservation(Rng& rng, std::size_t trials) {
  Tracker t("trace_preservation", 1e-13);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t d = trial_dim(i, 2, 8);
    const ModelSnapshot s = snapshot(random_model(rng, d, {.target_scale = rng.uniform(0.5, 5.0)}), 0.0);
    const Operator rho = random_hermitian(rng, d);
    const double scale = std::max(1.0, max_abs(rho) * s.generator_scale());
    t.record(std::abs(trace(apply_liouvillian(s, rho))) / scale);
  }
  t.result.detail = "|tr L(rho)| / max(1, |rho||L|)";
  return t.result;
}

PropertyResult hermiticity_propagation(Rng& rng, std::size_t trials) {
  Tracker t("hermiticity_propagation", 1e-12);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t d = trial_dim(i, 2, 8);
    const ModelSnapshot s = snapshot(random_model(rng, d, {.target_scale = rng.uniform(0.5, 5.0)}), 0.0);
    const Operator x = random_hermitian(rng, d);
    const double scale = std::max(1.0, max_abs(x) * s.generator_scale());
    t.record(hermiticity_defect(apply_liouvillian(s, x) * kI) / scale);
    t.record(hermiticity_defect(apply_adjoint(s, x) * kI) / scale);
  }
  t.result.detail = "Hermiticity defect of i L(x) and i L*(x) for Hermitian x";
  return t.result;
}

PropertyResult vectorized_consistency(Rng& rng, std::size_t trials) {
  Tracker t("liouvillian_matrix", 1e-12);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t d = trial_dim(i, 2, 8);
    const ModelSnapshot s = snapshot(random_model(rng, d, {.target_scale = rng.uniform(0.5, 5.0)}), 0.0);
    const Operator rho = random_matrix(rng, d);
    const VectorizedLiouvillian m = build_liouvillian_matrix(s);
    const Operator via_matrix = unvectorize(matvec(m.matrix, vectorize(rho)));
    const double scale = std::max(1.0, max_abs(rho) * s.generator_scale());
    t.record(max_abs_diff(via_matrix, apply_liouvillian(s, rho)) / scale);
  }
  t.result.detail = "maxabs(M vec(rho) - vec(L(rho))), column stacking";
  return t.result;
}

PropertyResult unitary_limit(Rng& rng, std::size_t trials) {
  Tracker t("unitary_limit", 1e-14);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t d = trial_dim(i, 2, 8);
    LindbladModel model = random_model(rng, d);
    for (auto& c : model.channels) c.alpha = 0.0;
    const ModelSnapshot s = snapshot(model, 0.0);
    const Operator a = random_hermitian(rng, d);
    t.record(max_abs(apply_adjoint(s, a) + apply_liouvillian(s, a)));
  }
  t.result.detail = "maxabs(L*(a) + L(a)) with all rates zero";
  return t.result;
}

PropertyResult spectrum_invariance(Rng& rng, std::size_t trials) {
  Tracker t("spectrum_unitary_invariance", 1e-10);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t d = trial_dim(i, 2, 8);
    const Operator a = random_hermitian(rng, d);
    const Operator u = random_unitary(rng, d);
    const auto lhs = hermitian_eigenvalues(hermitian_part(u * a * dagger(u)));
    const auto rhs = hermitian_eigenvalues(a);
    double defect = 0.0;
    for (std::size_t j = 0; j < d; ++j) defect = std::max(defect, std::abs(lhs[j] - rhs[j]));
    t.record(defect);
  }
  t.result.detail = "max |eig(U A U^dagger) - eig(A)|";
  return t.result;
}

double expectation_drift(const LindbladModel& model, const Operator& rho0, const Operator& seed,
                         const TimeGrid& grid) {
  const StateResult state = integrate_state(model, rho0, grid);
  const Trajectory inv = integrate_invariant(model, seed, SeedTime::kStart, grid);
  const auto series = conservation_series(inv, state.trajectory);
  double drift = 0.0;
  for (double v : series) drift = std::max(drift, std::abs(v - series.front()));
  return drift;
}

// Drift must either sit at roundoff or shrink like dt^4 (>= 12x per halving).
PropertyResult conservation(Rng& rng, std::size_t trials) {
  Tracker t("weak_invariant_conservation", 1.0);
  const std::size_t n = std::max<std::size_t>(1, trials / 5);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t d = trial_dim(i, 2, 6);
    const LindbladModel model =
        random_model(rng, d, {.time_dependent = true, .target_scale = 1.0, .t_max = 1.0});
    const Operator rho0 = random_density(rng, d);
    const Operator seed = random_hermitian(rng, d);
    const double coarse = expectation_drift(model, rho0, seed, TimeGrid(0.0, 1.0, 16));
    const double fine = expectation_drift(model, rho0, seed, TimeGrid(0.0, 1.0, 32));
    const double floor = 1e-12 * std::max(1.0, max_abs(seed));
    // normalized so that <= 1 passes
    t.record(fine <= floor ? 0.0 : fine * 12.0 / coarse);
  }
  t.result.detail = "RK4 drift of <I> under dt halving, 12 * fine/coarse (pass <= 1) or roundoff";
  return t.result;
}

DiscretizedPath random_path(Rng& rng, std::size_t d, std::size_t n_steps) {
  DiscretizedPath path{TimeGrid(0.0, 1.0, n_steps), {}, {}};
  for (std::size_t k = 0; k <= n_steps; ++k) {
    path.rho.push_back(random_hermitian(rng, d));
    path.lam.push_back(random_hermitian(rng, d));
  }
  return path;
}

double fd_gradient_defect(const DiscretizedPath& path, const LindbladModel& model, bool wrt_rho,
                          std::size_t node, double eps) {
  const auto grad = wrt_rho ? grad_rho(path, model) : grad_lam(path, model);
  double gmax = 0.0;
  for (const auto& g : grad) gmax = std::max(gmax, max_abs(g));
  double worst = 0.0;
  for (const Operator& e : hermitian_basis(model.dim)) {
    DiscretizedPath plus = path;
    DiscretizedPath minus = path;
    auto& p = wrt_rho ? plus.rho[node] : plus.lam[node];
    auto& m = wrt_rho ? minus.rho[node] : minus.lam[node];
    p.add_scaled(eps, e);
    m.add_scaled(-eps, e);
    const double fd = (evaluate_action(plus, model) - evaluate_action(minus, model)) / (2.0 * eps);
    const double analytic = expectation(grad[node], e).real();
    worst = std::max(worst, std::abs(fd - analytic) / std::max(gmax, 1e-300));
  }
  return worst;
}

PropertyResult gradient_fd(Rng& rng, std::size_t trials) {
  Tracker t("action_gradient_fd", 1e-8);
  const std::size_t n = std::max<std::size_t>(1, trials / 5);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t d = trial_dim(i, 2, 4);
    const std::size_t steps = 10;
    const LindbladModel model = random_model(rng, d, {.time_dependent = true, .t_max = 1.0});
    const DiscretizedPath path = random_path(rng, d, steps);
    for (std::size_t node : {std::size_t{0}, rng.index(steps + 1), steps}) {
      t.record(fd_gradient_defect(path, model, true, node, 1e-6));
      t.record(fd_gradient_defect(path, model, false, node, 1e-6));
    }
  }
  t.result.detail = "analytic vs central-difference action gradients, relative to max gradient";
  return t.result;
}

PropertyResult gauge_identity(Rng& rng, std::size_t trials) {
  Tracker t("gauge_shift_identity", 1e-11);
  const std::size_t n = std::max<std::size_t>(1, trials / 5);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t d = trial_dim(i, 2, 4);
    const LindbladModel model = random_model(rng, d, {.time_dependent = true, .t_max = 1.0});
    const DiscretizedPath path = random_path(rng, d, 20);
    std::vector<double> times;
    std::vector<double> values;
    for (int j = 0; j <= 8; ++j) {
      times.push_back(j / 8.0);
      values.push_back(rng.uniform(-2.0, 2.0));
    }
    const ScalarSchedule lambda = ScalarSchedule::tabulated(times, values);
    const GaugeShiftResult r = gauge_shift_check(path, model, lambda);
    const double scale = (1.0 + lambda.max_abs()) *
                         std::max(1.0, std::abs(evaluate_action(path, model)));
    t.record(r.final_condition_unchanged ? r.defect / scale : INFINITY);
  }
  t.result.detail = "|dS - sum dt lambda (tr rho_bar - tr rho_0)| / ((1 + max|lambda|) max(1, |S|))";
  return t.result;
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed; });
}

const PropertyResult& VerifyReport::find(const std::string& name) const {
  for (const auto& p : properties)
    if (p.name == name) return p;
  throw std::out_of_range("no property named " + name);
}

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.trials == 0) throw Error("trials must be >= 1");
  VerifyReport report;
  report.seed = options.seed;
  report.trials = options.trials;

  using Suite = std::function<PropertyResult(Rng&, std::size_t)>;
  const std::vector<Suite> suites = {
      [&](Rng& r, std::size_t n) { return adjoint_pairing(r, n, options.break_adjoint); },
      shift_property,
      identity_annihilation,
      trace_preservation,
      hermiticity_propagation,
      vectorized_consistency,
      unitary_limit,
      spectrum_invariance,
      conservation,
      gradient_fd,
      gauge_identity,
  };
  // Each suite draws from its own stream so adding trials to one suite
  // leaves the others' draws unchanged.
  for (std::size_t k = 0; k < suites.size(); ++k) {
    Rng rng(options.seed * 0x9E3779B97F4A7C15ULL + 1000003ULL * (k + 1));
    report.properties.push_back(suites[k](rng, options.trials));
  }
  return report;
}

json to_json(const VerifyReport& report) {
  json props = json::array();
  for (const auto& p : report.properties) {
    props.push_back({{"name", p.name},
                     {"passed", p.passed},
                     {"worst_defect", std::isfinite(p.worst_defect) ? json(p.worst_defect) : json(nullptr)},
                     {"tolerance", p.tolerance},
                     {"trials", p.trials},
                     {"detail", p.detail}});
  }
  return {{"seed", report.seed},
          {"trials", report.trials},
          {"all_passed", report.all_passed()},
          {"properties", props}};
}

}  // namespace weakinv
