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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "weakinv/invariant.hpp"
#include "weakinv/random.hpp"
#include "weakinv/scenarios.hpp"

using namespace weakinv;
namespace o = weakinv::ops;

namespace {

Trajectory constant_trajectory(const Operator& x, const TimeGrid& grid) {
  Trajectory t{grid, std::vector<Operator>(grid.n_nodes(), x), TrajectoryKind::kInvariant};
  return t;
}

struct Run {
  Trajectory state;
  Trajectory inv;
};

Run run(const LindbladModel& m, const Operator& rho0, const Operator& seed, const TimeGrid& grid) {
  return {integrate_state(m, rho0, grid).trajectory, integrate_invariant(m, seed, SeedTime::kStart, grid)};
}

}  // namespace

TEST_CASE("spectrum_series: constant trajectory") {
  const SpectrumSeries s = spectrum_series(constant_trajectory(Operator::diag({1.0, 2.0}), TimeGrid(0.0, 1.0, 4)));
  CHECK(s.eigenvalues.size() == 5);
  CHECK(s.total_variation == std::vector<double>{0.0, 0.0});
}

TEST_CASE("spectrum_series: amplitude damping node values") {
  const ScenarioSpec s = amplitude_damping_qubit(1.0, 0.5);
  const TimeGrid grid(0.0, 1.0, 1000);
  const SpectrumSeries series = spectrum_series(integrate_invariant(s.model, o::sigma_z(), SeedTime::kStart, grid));
  const double expected[] = {-1.0, -2.29744, -4.43656};
  for (std::size_t j = 0; j < 3; ++j) {
    const std::size_t k = 500 * j;
    CHECK(series.eigenvalues[k][0] == doctest::Approx(oracle::amp_damp_invariant_lower(0.5, grid.node(k))).epsilon(1e-9));
    CHECK(series.eigenvalues[k][0] == doctest::Approx(expected[j]).epsilon(1e-5));
    CHECK(series.eigenvalues[k][1] == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(series.total_variation[0] == doctest::Approx(2.0 * std::numbers::e - 2.0).epsilon(1e-8));
  CHECK(series.total_variation[0] == doctest::Approx(3.43656).epsilon(1e-5));
}

TEST_CASE("spectrum_series: non-Hermitian sample names the node") {
  Trajectory t = constant_trajectory(o::sigma_z(), TimeGrid(0.0, 1.0, 4));
  t.samples[3] = o::sigma_plus();
  try {
    spectrum_series(t);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("node 3") != std::string::npos);
  }
}

TEST_CASE("analyze: classification examples") {
  const TimeGrid grid(0.0, 1.0, 1000);

  SUBCASE("unitary oscillator is strong-like") {
    const ScenarioSpec s = damped_oscillator(6, 1.0, 0.0);
    const Run r = run(s.model, s.default_rho0, s.default_invariant_seed, grid);
    const InvariantReport rep = analyze(r.inv, r.state);
    CHECK(rep.max_expectation_drift <= 1e-9);
    for (double tv : rep.spectrum_total_variation) CHECK(tv <= 1e-8);
    CHECK(rep.classification == InvariantClass::kStrongLike);
  }
  SUBCASE("amplitude damping is weak") {
    const ScenarioSpec s = amplitude_damping_qubit(1.0, 0.5);
    const Run r = run(s.model, s.default_rho0, o::sigma_z(), grid);
    const InvariantReport rep = analyze(r.inv, r.state);
    CHECK(rep.max_expectation_drift <= 1e-8);
    CHECK(rep.spectrum_total_variation[0] == doctest::Approx(2.0 * std::numbers::e - 2.0).epsilon(1e-8));
    CHECK(rep.classification == InvariantClass::kWeak);
    CHECK(to_string(rep.classification) == "weak");
  }
  SUBCASE("identity seed is degenerate strong-like") {
    const ScenarioSpec s = amplitude_damping_qubit(1.0, 0.5);
    const Run r = run(s.model, s.default_rho0, Operator::identity(2), grid);
    const InvariantReport rep = analyze(r.inv, r.state);
    CHECK(rep.max_expectation_drift <= 1e-12);
    for (double tv : rep.spectrum_total_variation) CHECK(tv <= 1e-12);
    CHECK(to_string(rep.classification) == "strong-like");
  }
  SUBCASE("grid mismatch") {
    const ScenarioSpec s = amplitude_damping_qubit(1.0, 0.5);
    const Run a = run(s.model, s.default_rho0, o::sigma_z(), grid);
    const Run b = run(s.model, s.default_rho0, o::sigma_z(), TimeGrid(0.0, 1.0, 10));
    CHECK_THROWS_AS(analyze(a.inv, b.state), Error);
  }
}

TEST_CASE("analyze: threshold boundary is inclusive") {
  const ScenarioSpec s = amplitude_damping_qubit(1.0, 0.5);
  const TimeGrid grid(0.0, 1.0, 200);
  const Run r = run(s.model, s.default_rho0, o::sigma_z(), grid);
  const double tv = spectrum_series(r.inv).total_variation[0];
  CHECK(analyze(r.inv, r.state, tv).classification == InvariantClass::kStrongLike);
  CHECK(analyze(r.inv, r.state, tv * (1 - 1e-12)).classification == InvariantClass::kWeak);
}

TEST_CASE("scenario dichotomy at default parameters") {
  for (const std::string& name : scenario_names()) {
    const ScenarioSpec s = make_scenario(name);
    const TimeGrid grid(s.default_grid.t_start(), s.default_grid.t_end(), s.default_grid.n_steps() / 5);
    const Run r = run(s.model, s.default_rho0, s.default_invariant_seed, grid);
    const InvariantReport rep = analyze(r.inv, r.state);
    CAPTURE(name);
    CHECK(rep.classification == InvariantClass::kWeak);
    CHECK(*std::max_element(rep.spectrum_total_variation.begin(), rep.spectrum_total_variation.end()) > 1e-2);
  }
  const ScenarioSpec unitary = amplitude_damping_qubit(1.0, 0.0);
  const Run r = run(unitary.model, unitary.default_rho0, o::sigma_x(), TimeGrid(0.0, 5.0, 1000));
  CHECK(analyze(r.inv, r.state).classification == InvariantClass::kStrongLike);
}

TEST_CASE("shift_check") {
  const ScenarioSpec s = amplitude_damping_qubit(1.0, 0.5);
  const TimeGrid grid(0.0, 1.0, 1000);
  const Trajectory inv = integrate_invariant(s.model, o::sigma_z(), SeedTime::kStart, grid);
  CHECK(shift_check(s.model, inv, 0.0) == 0.0);
  CHECK(shift_check(s.model, inv, 2.5) <= 1e-10);

  LindbladModel u;
  u.dim = 2;
  u.hamiltonian = o::sigma_x();
  u.finalize();
  const Trajectory uinv = integrate_invariant(u, o::sigma_z(), SeedTime::kStart, grid);
  CHECK(shift_check(u, uinv, -1.0) <= 1e-12);
}

TEST_CASE("shift covariance on random models") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 2 + rng.index(4);
    const LindbladModel m = random_model(rng, d, {.time_dependent = trial % 2 == 1, .t_max = 1.0});
    const Trajectory inv = integrate_invariant(m, random_hermitian(rng, d), trial % 3 == 0 ? SeedTime::kEnd : SeedTime::kStart,
                                               TimeGrid(0.0, 1.0, 100));
    const double c = 5.0 * rng.normal();
    CHECK(shift_check(m, inv, c) <= 1e-10 * (1.0 + std::abs(c)));
  }
}

TEST_CASE("expectation drift is at least fourth order in dt") {
  // rho and I advance by p(z) and its dual, so the pairing sees p(z) p(-z);
  // for the RK4 polynomial that is 1 + O(z^6) and the drift falls as dt^5
  Rng rng(32);
  const LindbladModel m = random_model(rng, 3, {.time_dependent = true, .t_max = 2.0});
  const Operator rho0 = random_density(rng, 3);
  const Operator seed = random_hermitian(rng, 3);
  std::vector<double> logn, logd;
  for (std::size_t n : {20, 40, 80, 160}) {
    const TimeGrid grid(0.0, 2.0, n);
    const Run r = run(m, rho0, seed, grid);
    logn.push_back(std::log(static_cast<double>(n)));
    logd.push_back(std::log(analyze(r.inv, r.state).max_expectation_drift));
  }
  const double mx = (logn[0] + logn[1] + logn[2] + logn[3]) / 4;
  const double my = (logd[0] + logd[1] + logd[2] + logd[3]) / 4;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    sxy += (logn[j] - mx) * (logd[j] - my);
    sxx += (logn[j] - mx) * (logn[j] - mx);
  }
  const double slope = -sxy / sxx;
  CAPTURE(slope);
  CHECK(slope >= 3.5);
  CHECK(slope == doctest::Approx(5.0).epsilon(0.1));
}
