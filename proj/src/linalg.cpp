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

#include "weakinv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weakinv {

Operator::Operator(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw DimensionError("operator dimension must be >= 1");
}

Operator::Operator(std::size_t dim, std::vector<complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw DimensionError("operator dimension must be >= 1");
  if (data_.size() != dim * dim) {
    std::ostringstream msg;
    msg << "operator of dim " << dim << " needs " << dim * dim << " entries, got "
        << data_.size();
    throw DimensionError(msg.str());
  }
}

Operator::Operator(std::initializer_list<std::initializer_list<complex>> rows)
    : Operator(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionError("ragged operator initializer");
    std::size_t c = 0;
    for (const auto& v : row) (*this)(r, c++) = v;
    ++r;
  }
}

Operator Operator::identity(std::size_t dim) {
  Operator out(dim);
  for (std::size_t j = 0; j < dim; ++j) out(j, j) = 1.0;
  return out;
}

Operator Operator::diag(std::span<const complex> values) {
  Operator out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) out(j, j) = values[j];
  return out;
}

Operator Operator::diag(std::initializer_list<complex> values) {
  return diag(std::span<const complex>(values.begin(), values.size()));
}

Operator Operator::projector(std::span<const complex> psi) {
  Operator out(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j)
    for (std::size_t k = 0; k < psi.size(); ++k) out(j, k) = psi[j] * std::conj(psi[k]);
  return out;
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionError(msg.str());
  }
}

Operator& Operator::operator+=(const Operator& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Operator& Operator::operator*=(complex scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

Operator& Operator::add_scaled(complex scale, const Operator& other) {
  require_same_dim(*this, other, "add_scaled");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += scale * other.data_[i];
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator*");
  const std::size_t n = a.dim();
  Operator out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Operator dagger(const Operator& a) {
  Operator out(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < a.dim(); ++k) out(k, j) = std::conj(a(j, k));
  return out;
}

Operator transpose(const Operator& a) {
  Operator out(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < a.dim(); ++k) out(k, j) = a(j, k);
  return out;
}

Operator conjugate(const Operator& a) {
  Operator out = a;
  for (auto& v : out.entries()) v = std::conj(v);
  return out;
}

Operator kron(const Operator& a, const Operator& b) {
  const std::size_t n = a.dim();
  const std::size_t m = b.dim();
  Operator out(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const complex aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out(i * m + k, j * m + l) = aij * b(k, l);
    }
  return out;
}

complex trace(const Operator& a) {
  complex sum = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) sum += a(j, j);
  return sum;
}

complex hs_inner(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "hs_inner");
  complex sum = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) sum += std::conj(ea[i]) * eb[i];
  return sum;
}

complex expectation(const Operator& a, const Operator& rho) {
  require_same_dim(a, rho, "expectation");
  // tr(a rho) = sum_jk a_jk rho_kj, no full product needed
  complex sum = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < a.dim(); ++k) sum += a(j, k) * rho(k, j);
  return sum;
}

double max_abs(const Operator& a) {
  double m = 0.0;
  for (const auto& v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

double hermiticity_defect(const Operator& a) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = j; k < a.dim(); ++k)
      m = std::max(m, std::abs(a(j, k) - std::conj(a(k, j))));
  return m;
}

bool is_hermitian(const Operator& a, double rel_tol) {
  return hermiticity_defect(a) <= rel_tol * std::max(1.0, max_abs(a));
}

Operator hermitian_part(const Operator& a) {
  Operator out(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    out(j, j) = a(j, j).real();
    for (std::size_t k = j + 1; k < a.dim(); ++k) {
      const complex v = 0.5 * (a(j, k) + std::conj(a(k, j)));
      out(j, k) = v;
      out(k, j) = std::conj(v);
    }
  }
  return out;
}

bool all_finite(const Operator& a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](const complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

namespace {

double off_diagonal_norm(const Operator& a) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (j != k) sum += std::norm(a(j, k));
  return std::sqrt(sum);
}

double frobenius_norm(const Operator& a) {
  double sum = 0.0;
  for (const auto& v : a.entries()) sum += std::norm(v);
  return std::sqrt(sum);
}

// A <- G^dagger A G with G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on (p, q).
void rotate(Operator& a, std::size_t p, std::size_t q) {
  const complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const complex phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = 0.5 * std::atan2(2.0 * r, aqq - app);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const complex gpp = c;
  const complex gpq = s;
  const complex gqp = -s * std::conj(phase);
  const complex gqq = c * std::conj(phase);

  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const complex akp = a(k, p);
    const complex akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const complex apk = a(p, k);
    const complex aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

JacobiResult jacobi_diagonalize(const Operator& input) {
  const double defect = hermiticity_defect(input);
  const double scale = std::max(1.0, max_abs(input));
  if (defect > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "hermitian_eigenvalues: matrix is not Hermitian (defect norm " << defect << ")";
    throw Error(msg.str());
  }

  JacobiResult result;
  result.rotated = hermitian_part(input);
  Operator& a = result.rotated;
  const std::size_t n = a.dim();

  const double initial = off_diagonal_norm(a);
  const double target = std::max(1e-13 * initial, 1e-17 * frobenius_norm(a));
  constexpr int kMaxSweeps = 100;
  while (off_diagonal_norm(a) > target && result.sweeps < kMaxSweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, p, q);
    ++result.sweeps;
  }
  if (off_diagonal_norm(a) > target)
    throw Error("hermitian_eigenvalues: Jacobi sweeps did not converge");

  result.eigenvalues.resize(n);
  for (std::size_t j = 0; j < n; ++j) result.eigenvalues[j] = a(j, j).real();
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  return result;
}

std::vector<double> hermitian_eigenvalues(const Operator& a) {
  return jacobi_diagonalize(a).eigenvalues;
}

}  // namespace weakinv
