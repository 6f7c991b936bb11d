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

#include "doctest.h"
#include "oracles.hpp"
#include "weakinv/random.hpp"
#include "weakinv/scenarios.hpp"
#include "weakinv/superop.hpp"

using namespace weakinv;
namespace o = weakinv::ops;

namespace {

ModelSnapshot amp_damp_snapshot(double gamma) {
  return snapshot(amplitude_damping_qubit(1.0, gamma).model, 0.0);
}

ModelSnapshot unitary_snapshot(const Operator& h) {
  LindbladModel m;
  m.dim = h.dim();
  m.hamiltonian = h;
  m.finalize();
  return snapshot(m, 0.0);
}

}  // namespace

TEST_CASE("apply_liouvillian: amplitude damping of the excited state") {
  const ModelSnapshot s = amp_damp_snapshot(0.5);
  const Operator rho = o::basis_projector(2, 1);
  const Operator out = apply_liouvillian(s, rho);
  CHECK(max_abs_diff(out, Operator::diag({complex(0, 1), complex(0, -1)})) <= 1e-15);
  CHECK(oracle::max_diff(oracle::liouvillian(s, oracle::from(rho)), out) <= 1e-15);
}

TEST_CASE("apply_liouvillian: unitary limit and stationary ground state") {
  Rng rng(11);
  const Operator h = random_hermitian(rng, 3);
  const Operator rho = random_density(rng, 3);
  CHECK(max_abs_diff(apply_liouvillian(unitary_snapshot(h), rho), commutator(h, rho)) == 0.0);

  for (double gamma : {0.1, 0.5, 3.0}) {
    const Operator out = apply_liouvillian(amp_damp_snapshot(gamma), o::basis_projector(2, 0));
    CHECK(max_abs(out) == 0.0);
  }
}

TEST_CASE("apply_adjoint: examples") {
  const ModelSnapshot s = amp_damp_snapshot(0.5);
  CHECK(max_abs(apply_adjoint(s, Operator::identity(2))) <= 1e-15);

  for (double gamma : {0.5, 1.25}) {
    const ModelSnapshot sg = amp_damp_snapshot(gamma);
    const Operator out = apply_adjoint(sg, o::sigma_z());
    CHECK(max_abs_diff(out, o::basis_projector(2, 1) * complex(0.0, 4.0 * gamma)) <= 1e-15);
    CHECK(oracle::max_diff(oracle::adjoint(sg, oracle::from(o::sigma_z())), out) <= 1e-15);
  }

  Rng rng(12);
  const Operator h = random_hermitian(rng, 4);
  const Operator a = random_hermitian(rng, 4);
  CHECK(max_abs_diff(apply_adjoint(unitary_snapshot(h), a), commutator(h, a) * complex(-1.0)) == 0.0);
}

TEST_CASE("adjoint_pairing_defect: examples") {
  const ModelSnapshot s = amp_damp_snapshot(0.5);
  const Operator a = o::sigma_z();
  const Operator rho = o::basis_projector(2, 1);
  CHECK(trace(a * apply_liouvillian(s, rho)) == complex(0.0, 2.0));
  CHECK(trace(apply_adjoint(s, a) * rho) == complex(0.0, 2.0));
  CHECK(adjoint_pairing_defect(s, a, rho) <= 1e-14);

  Rng rng(13);
  const LindbladModel m = random_model(rng, 4);
  const ModelSnapshot s4 = snapshot(m, 0.0);
  CHECK(adjoint_pairing_defect(s4, Operator::identity(4), random_density(rng, 4)) <= 1e-13);
}

TEST_CASE("generator matches the reference formulas on random models") {
  Rng rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + rng.index(7);
    const ModelSnapshot s = snapshot(random_model(rng, d), 0.0);
    const Operator x = random_matrix(rng, d);
    const double scale = s.generator_scale() * max_abs(x);
    CHECK(oracle::max_diff(oracle::liouvillian(s, oracle::from(x)), apply_liouvillian(s, x)) <= 1e-13 * scale);
    CHECK(oracle::max_diff(oracle::adjoint(s, oracle::from(x)), apply_adjoint(s, x)) <= 1e-13 * scale);
  }
}

TEST_CASE("pairing identity over 200 random draws") {
  Rng rng(15);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + rng.index(7);
    const ModelSnapshot s = snapshot(random_model(rng, d), 0.0);
    const Operator a = random_hermitian(rng, d);
    const Operator rho = random_density(rng, d);
    const double scale = std::max(1.0, s.generator_scale() * max_abs(a) * max_abs(rho));
    worst = std::max(worst, adjoint_pairing_defect(s, a, rho) / scale);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("shift property and trace preservation") {
  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + rng.index(7);
    const ModelSnapshot s = snapshot(random_model(rng, d), 0.0);
    const Operator a = random_hermitian(rng, d);
    const complex c = trial % 2 == 0 ? complex(rng.normal(), 0.0) : rng.complex_normal();
    const double scale = std::max(1.0, s.generator_scale() * (max_abs(a) + std::abs(c)));
    const Operator shifted = apply_adjoint(s, a + Operator::identity(d) * c);
    CHECK(max_abs_diff(shifted, apply_adjoint(s, a)) <= 1e-13 * scale);
    CHECK(max_abs(apply_adjoint(s, Operator::identity(d))) <= 1e-14 * std::max(1.0, s.generator_scale()));

    const Operator rho = random_density(rng, d);
    CHECK(std::abs(trace(apply_liouvillian(s, rho))) <= 1e-13 * std::max(1.0, s.generator_scale()));
  }
}

TEST_CASE("Hermiticity propagation") {
  Rng rng(17);
  const complex i(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + rng.index(7);
    const ModelSnapshot s = snapshot(random_model(rng, d), 0.0);
    const Operator h = random_hermitian(rng, d);
    const double scale = std::max(1.0, s.generator_scale() * max_abs(h));
    CHECK(hermiticity_defect(apply_liouvillian(s, h) * i) <= 1e-12 * scale);
    CHECK(hermiticity_defect(apply_adjoint(s, h) * i) <= 1e-12 * scale);
  }
}

TEST_CASE("unitary limit: adjoint is the negated generator on Hermitian input") {
  Rng rng(18);
  for (std::size_t d = 2; d <= 6; ++d) {
    const ModelSnapshot s = unitary_snapshot(random_hermitian(rng, d));
    const Operator a = random_hermitian(rng, d);
    CHECK(max_abs_diff(apply_adjoint(s, a), apply_liouvillian(s, a) * complex(-1.0)) <= 1e-14);
  }
}

TEST_CASE("vectorized Liouvillian") {
  SUBCASE("zero model") {
    LindbladModel m;
    m.dim = 3;
    m.hamiltonian = Operator(3);
    m.finalize();
    CHECK(max_abs(build_liouvillian_matrix(snapshot(m, 0.0)).matrix) == 0.0);
  }
  SUBCASE("amplitude damping image of the excited state") {
    const VectorizedLiouvillian v = build_liouvillian_matrix(amp_damp_snapshot(0.5));
    const auto image = unvectorize(matvec(v.matrix, vectorize(o::basis_projector(2, 1))));
    CHECK(max_abs_diff(image, Operator::diag({complex(0, 1), complex(0, -1)})) <= 1e-15);
  }
  SUBCASE("column stacking order") {
    const Operator x{{1.0, 2.0}, {3.0, 4.0}};
    const auto v = vectorize(x);
    CHECK(v == std::vector<complex>{1.0, 3.0, 2.0, 4.0});
    CHECK(unvectorize(v) == x);
  }
  SUBCASE("matches the column-by-column assembly and the generator") {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 2 + rng.index(5);
      const ModelSnapshot s = snapshot(random_model(rng, d), 0.0);
      const Operator m = build_liouvillian_matrix(s).matrix;
      const double scale = std::max(1.0, s.generator_scale());
      CHECK(oracle::max_diff(oracle::liouvillian_matrix_by_columns(s), m) <= 1e-13 * scale);

      const Operator rho = random_density(rng, d);
      const Operator image = unvectorize(matvec(m, vectorize(rho)));
      CHECK(max_abs_diff(image, apply_liouvillian(s, rho)) <= 1e-12 * scale);
      CHECK(std::abs(trace(image)) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const ModelSnapshot s = amp_damp_snapshot(0.5);
  CHECK_THROWS_AS(apply_liouvillian(s, Operator(3)), DimensionError);
  CHECK_THROWS_AS(apply_adjoint(s, Operator(3)), DimensionError);
  CHECK_THROWS_AS(adjoint_pairing_defect(s, Operator(2), Operator(3)), DimensionError);
}
