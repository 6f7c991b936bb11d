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

#include "weakinv/superop.hpp"

#include <cmath>

namespace weakinv {

namespace {

const complex kI{0.0, 1.0};

// sum_n alpha_n (Ln^+ Ln x + x Ln^+ Ln - 2 jump_n(x))
template <class Jump>
Operator dissipator_sum(const ModelSnapshot& s, const Operator& x, Jump jump) {
  Operator out(x.dim());
  for (const auto& c : s.channels) {
    if (c.alpha == 0.0) continue;
    Operator term = c.l_dag_l * x;
    term += x * c.l_dag_l;
    term.add_scaled(-2.0, jump(c, x));
    out.add_scaled(c.alpha, term);
  }
  return out;
}

}  // namespace

Operator apply_liouvillian(const ModelSnapshot& s, const Operator& rho) {
  require_same_dim(s.h, rho, "apply_liouvillian");
  Operator out = commutator(s.h, rho);
  out.add_scaled(-kI, dissipator_sum(s, rho, [](const ChannelSnapshot& c, const Operator& x) {
    return c.l * x * c.l_dag;
  }));
  return out;
}

Operator apply_adjoint(const ModelSnapshot& s, const Operator& a) {
  require_same_dim(s.h, a, "apply_adjoint");
  Operator out = commutator(a, s.h);
  out.add_scaled(-kI, dissipator_sum(s, a, [](const ChannelSnapshot& c, const Operator& x) {
    return c.l_dag * x * c.l;
  }));
  return out;
}

double adjoint_pairing_defect(const ModelSnapshot& s, const Operator& a, const Operator& rho) {
  require_same_dim(a, rho, "adjoint_pairing_defect");
  const complex lhs = expectation(a, apply_liouvillian(s, rho));
  const complex rhs = expectation(apply_adjoint(s, a), rho);
  return std::abs(lhs - rhs);
}

VectorizedLiouvillian build_liouvillian_matrix(const ModelSnapshot& s) {
  const std::size_t n = s.dim();
  const Operator id = Operator::identity(n);
  Operator m = kron(id, s.h);
  m -= kron(transpose(s.h), id);
  for (const auto& c : s.channels) {
    if (c.alpha == 0.0) continue;
    Operator d = kron(id, c.l_dag_l);
    d += kron(transpose(c.l_dag_l), id);
    d.add_scaled(-2.0, kron(conjugate(c.l), c.l));
    m.add_scaled(-kI * c.alpha, d);
  }
  return {std::move(m), s.t};
}

std::vector<complex> vectorize(const Operator& x) {
  const std::size_t n = x.dim();
  std::vector<complex> v(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) v[j + k * n] = x(j, k);
  return v;
}

Operator unvectorize(std::span<const complex> v) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size() || n == 0) throw DimensionError("unvectorize: length is not a perfect square");
  Operator x(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) x(j, k) = v[j + k * n];
  return x;
}

std::vector<complex> matvec(const Operator& m, std::span<const complex> v) {
  if (m.dim() != v.size()) throw DimensionError("matvec: dimension mismatch");
  std::vector<complex> out(v.size());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    complex sum = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) sum += m(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

}  // namespace weakinv
