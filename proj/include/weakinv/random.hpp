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

#include <cstdint>
#include <random>

#include "weakinv/linalg.hpp"
#include "weakinv/model.hpp"

namespace weakinv {

/// Seeded generator whose output is identical on every platform.
///
/// std::mt19937_64 is fully specified; the standard distributions are not,
/// so the conversions to uniform and normal deviates live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  complex complex_normal() { return {normal(), normal()}; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 gen_;
};

Operator random_matrix(Rng& rng, std::size_t dim);
Operator random_hermitian(Rng& rng, std::size_t dim);
/// G G^dagger / tr, full rank with probability one.
Operator random_density(Rng& rng, std::size_t dim);
/// exp(K) for a random anti-Hermitian K.
Operator random_unitary(Rng& rng, std::size_t dim);

/// Matrix exponential by scaling and squaring of a Taylor series. Meant for
/// building test unitaries, not for propagation.
Operator expm(const Operator& a);

/// dim^2 Hermitian matrices spanning the Hermitian operators: |j><j|,
/// |j><k| + |k><j| and -i|j><k| + i|k><j| for j < k.
std::vector<Operator> hermitian_basis(std::size_t dim);

struct RandomModelOptions {
  std::size_t max_channels = 3;
  bool time_dependent = false;
  /// Rescales H and the rates so the generator scale is about this value.
  double target_scale = 1.0;
  /// End of the tabulated domain of time-dependent models, which start at 0.
  double t_max = 1.0;
};

/// Random valid Lindblad model. With time_dependent set, H is tabulated on
/// [0, t_max] and every rate is a nonnegative sinusoid.
LindbladModel random_model(Rng& rng, std::size_t dim, const RandomModelOptions& options = {});

}  // namespace weakinv
