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

#include "weakinv/linalg.hpp"
#include "weakinv/model.hpp"

namespace weakinv {

/// Lindblad generator in the convention i d(rho)/dt = L(rho):
///
///   L(rho) = [H, rho] - i sum_n alpha_n (Ln^+ Ln rho + rho Ln^+ Ln - 2 Ln rho Ln^+)
Operator apply_liouvillian(const ModelSnapshot& s, const Operator& rho);

/// Adjoint generator, dual under tr(a L(rho)) = tr(L*(a) rho):
///
///   L*(a) = -[H, a] - i sum_n alpha_n (Ln^+ Ln a + a Ln^+ Ln - 2 Ln^+ a Ln)
Operator apply_adjoint(const ModelSnapshot& s, const Operator& a);

/// |tr(a L(rho)) - tr(L*(a) rho)|; zero up to roundoff.
double adjoint_pairing_defect(const ModelSnapshot& s, const Operator& a, const Operator& rho);

/// Matrix M of L under column stacking, vec(X)[j + k*dim] = X(j, k), so that
/// vec(L(rho)) = M vec(rho).
struct VectorizedLiouvillian {
  Operator matrix;  // dim^2 x dim^2
  double t = 0.0;
};

VectorizedLiouvillian build_liouvillian_matrix(const ModelSnapshot& s);

std::vector<complex> vectorize(const Operator& x);
Operator unvectorize(std::span<const complex> v);
std::vector<complex> matvec(const Operator& m, std::span<const complex> v);

}  // namespace weakinv
