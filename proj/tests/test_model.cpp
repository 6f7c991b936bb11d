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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "weakinv/model.hpp"
#include "weakinv/scenarios.hpp"

using namespace weakinv;
namespace o = weakinv::ops;

namespace {

LindbladModel constant_model(Operator h, Operator l, double alpha) {
  LindbladModel m;
  m.dim = h.dim();
  m.hamiltonian = std::move(h);
  m.channels.push_back({std::move(l), alpha});
  m.finalize();
  return m;
}

}  // namespace

TEST_CASE("validate: valid constant model") {
  const auto m = constant_model(o::sigma_z(), o::sigma_minus(), 0.5);
  CHECK(validate(m, {0.0, 1.0, 2.0}).ok());
}

TEST_CASE("validate: negative sinusoidal rate is flagged") {
  // 0.1 + 0.2 sin(4.8) < 0
  CHECK(0.1 + 0.2 * std::sin(4.8) < 0.0);
  LindbladModel m = constant_model(o::sigma_z(), o::sigma_minus(), 0.0);
  m.channels[0].alpha = ScalarSchedule::sinusoidal(0.1, 0.2, 1.0);
  m.finalize();
  const ValidationReport r = validate(m, {0.0, 4.8});
  REQUIRE(r.issues.size() == 1);
  CHECK(r.issues[0].kind == ValidationIssue::Kind::kNegativeRate);
  CHECK(r.issues[0].t == 4.8);
  CHECK(r.issues[0].magnitude == doctest::Approx(0.1 + 0.2 * std::sin(4.8)));
  CHECK(r.issues[0].schedule == "channels[0].alpha");
}

TEST_CASE("validate: non-Hermitian hamiltonian is flagged with its defect") {
  const auto m = constant_model(o::sigma_plus(), o::sigma_minus(), 0.5);
  const ValidationReport r = validate(m, {0.0});
  REQUIRE(r.issues.size() == 1);
  CHECK(r.issues[0].kind == ValidationIssue::Kind::kHermiticity);
  CHECK(r.issues[0].magnitude == 1.0);
}

TEST_CASE("validate: out-of-range times are reported, not thrown") {
  LindbladModel m = constant_model(o::sigma_z(), o::sigma_minus(), 0.0);
  m.channels[0].alpha = ScalarSchedule::tabulated({0.0, 1.0}, {0.1, 0.2});
  m.finalize();
  const ValidationReport r = validate(m, {0.5, 2.0});
  REQUIRE(r.issues.size() == 1);
  CHECK(r.issues[0].kind == ValidationIssue::Kind::kRange);
}

TEST_CASE("snapshot: constant model is time-independent") {
  const auto m = constant_model(o::sigma_z(), o::sigma_minus(), 0.5);
  const ModelSnapshot a = snapshot(m, 0.0);
  const ModelSnapshot b = snapshot(m, 17.3);
  CHECK(a.h == b.h);
  CHECK(a.channels[0].l == b.channels[0].l);
  CHECK(a.channels[0].alpha == b.channels[0].alpha);
  CHECK(a.channels[0].l_dag == dagger(a.channels[0].l));
  CHECK(a.channels[0].l_dag_l == a.channels[0].l_dag * a.channels[0].l);
}

TEST_CASE("snapshot: tabulated rate interpolates linearly") {
  LindbladModel m = constant_model(o::sigma_z(), o::sigma_minus(), 0.0);
  m.channels[0].alpha = ScalarSchedule::tabulated({0.0, 2.0}, {0.0, 1.0});
  m.finalize();
  CHECK(snapshot(m, 0.5).channels[0].alpha == 0.25);
  CHECK(snapshot(m, 2.0).channels[0].alpha == 1.0);
}

TEST_CASE("snapshot: out-of-range query names the schedule") {
  LindbladModel m = constant_model(o::sigma_z(), o::sigma_minus(), 0.0);
  m.channels[0].alpha = ScalarSchedule::tabulated({0.0, 2.0}, {0.0, 1.0});
  m.finalize();
  try {
    snapshot(m, 2.5);
    FAIL("expected ScheduleRangeError");
  } catch (const ScheduleRangeError& e) {
    CHECK(std::string(e.what()).find("channels[0].alpha") != std::string::npos);
  }
  CHECK_THROWS_AS(snapshot(m, -0.1), ScheduleRangeError);
}

TEST_CASE("snapshot: scaled sinusoidal hamiltonian") {
  LindbladModel m;
  m.dim = 2;
  m.hamiltonian = OperatorSchedule::scaled(ScalarSchedule::sinusoidal(1.0, 0.1, 1.0), Operator::diag({0.0, 1.0}));
  m.finalize();
  const ModelSnapshot s = snapshot(m, std::numbers::pi / 2);
  CHECK(s.h(0, 0) == complex(0.0));
  CHECK(s.h(1, 1).real() == doctest::Approx(1.1).epsilon(1e-15));
}

TEST_CASE("snapshot is pure") {
  LindbladModel m;
  m.dim = 2;
  m.hamiltonian = OperatorSchedule::tabulated({0.0, 1.0, 3.0}, {o::sigma_z(), o::sigma_x(), o::sigma_y()});
  m.channels.push_back({o::sigma_minus(), ScalarSchedule::sinusoidal(0.5, 0.2, 2.0, 0.3)});
  m.finalize();
  for (double t : {0.0, 0.37, 1.0, 2.2, 3.0}) {
    const ModelSnapshot a = snapshot(m, t);
    const ModelSnapshot b = snapshot(m, t);
    CHECK(a.h == b.h);
    CHECK(a.channels[0].alpha == b.channels[0].alpha);
  }
  // halfway between sigma_x and sigma_y
  const ModelSnapshot mid = snapshot(m, 2.0);
  CHECK(mid.h == (o::sigma_x() + o::sigma_y()) * complex(0.5));
}

TEST_CASE("schedule construction errors") {
  CHECK_THROWS_AS(ScalarSchedule::tabulated({0.0, 0.0}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(ScalarSchedule::tabulated({1.0, 0.0}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(ScalarSchedule::tabulated({0.0, 1.0}, {1.0}), Error);
  CHECK_THROWS_AS(ScalarSchedule::sinusoidal(0.0, NAN, 1.0), Error);
  CHECK_THROWS_AS(OperatorSchedule::tabulated({0.0, 1.0}, {Operator(2), Operator(3)}), DimensionError);

  LindbladModel m;
  m.dim = 3;
  m.hamiltonian = o::sigma_z();
  CHECK_THROWS_AS(m.finalize(), DimensionError);
}
