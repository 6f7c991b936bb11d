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

#include "weakinv/random.hpp"

#include <cmath>
#include <numbers>

namespace weakinv {

double Rng::normal() {
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Operator random_matrix(Rng& rng, std::size_t dim) {
  Operator out(dim);
  for (auto& v : out.entries()) v = rng.complex_normal() * std::numbers::sqrt2 * 0.5;
  return out;
}

Operator random_hermitian(Rng& rng, std::size_t dim) { return hermitian_part(random_matrix(rng, dim)); }

Operator random_density(Rng& rng, std::size_t dim) {
  const Operator g = random_matrix(rng, dim);
  Operator rho = g * dagger(g);
  rho *= 1.0 / trace(rho).real();
  return hermitian_part(rho);
}

Operator random_unitary(Rng& rng, std::size_t dim) {
  const Operator h = random_hermitian(rng, dim);
  return expm(h * complex(0.0, 1.0));
}

Operator expm(const Operator& a) {
  const double norm = max_abs(a) * static_cast<double>(a.dim());
  int squarings = 0;
  double scaled_norm = norm;
  while (scaled_norm > 0.25) {
    scaled_norm *= 0.5;
    ++squarings;
  }
  const Operator x = a * complex(std::ldexp(1.0, -squarings));
  Operator result = Operator::identity(a.dim());
  Operator term = Operator::identity(a.dim());
  for (int k = 1; k <= 24; ++k) {
    term = term * x;
    term *= 1.0 / k;
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

std::vector<Operator> hermitian_basis(std::size_t dim) {
  std::vector<Operator> basis;
  basis.reserve(dim * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    Operator e(dim);
    e(j, j) = 1.0;
    basis.push_back(std::move(e));
  }
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j + 1; k < dim; ++k) {
      Operator re(dim);
      re(j, k) = 1.0;
      re(k, j) = 1.0;
      basis.push_back(std::move(re));
      Operator im(dim);
      im(j, k) = complex(0.0, -1.0);
      im(k, j) = complex(0.0, 1.0);
      basis.push_back(std::move(im));
    }
  return basis;
}

LindbladModel random_model(Rng& rng, std::size_t dim, const RandomModelOptions& options) {
  LindbladModel model;
  model.dim = dim;
  const Operator h0 = random_hermitian(rng, dim);
  const std::size_t n_channels = 1 + rng.index(options.max_channels);

  std::vector<Operator> jumps;
  std::vector<double> rates;
  double scale = max_abs(h0);
  for (std::size_t n = 0; n < n_channels; ++n) {
    jumps.push_back(random_matrix(rng, dim));
    rates.push_back(rng.uniform(0.1, 1.0));
    const double l = max_abs(jumps.back());
    scale += rates.back() * l * l;
  }
  const double factor = options.target_scale / scale;

  if (options.time_dependent) {
    // H tabulated at five nodes over [0, t_max], perturbing h0 node by node
    std::vector<double> times;
    std::vector<Operator> values;
    for (int i = 0; i <= 4; ++i) {
      times.push_back(options.t_max * i / 4.0);
      Operator h = h0;
      h.add_scaled(0.3, random_hermitian(rng, dim));
      values.push_back(h * complex(factor));
    }
    model.hamiltonian = OperatorSchedule::tabulated(std::move(times), std::move(values));
  } else {
    model.hamiltonian = h0 * complex(factor);
  }

  for (std::size_t n = 0; n < n_channels; ++n) {
    const double rate = rates[n] * factor;
    ScalarSchedule alpha(rate);
    if (options.time_dependent) {
      const double freq = rng.uniform(0.5, 3.0);
      alpha = ScalarSchedule::sinusoidal(rate, 0.5 * rate, freq, rng.uniform(0.0, 6.0));
    }
    model.channels.push_back({jumps[n], alpha});
  }
  model.finalize();
  return model;
}

}  // namespace weakinv
