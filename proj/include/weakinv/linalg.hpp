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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace weakinv {

using complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Dense complex square matrix, row-major, in units with hbar = 1.
///
/// Holds density operators, invariants, Hamiltonians and jump operators
/// alike. Arithmetic is value-semantic; every binary operation checks
/// dimensions and throws DimensionError on mismatch.
class Operator {
 public:
  Operator() = default;
  explicit Operator(std::size_t dim);
  Operator(std::size_t dim, std::vector<complex> entries);
  /// Row-major nested initializer, e.g. {{0, 1}, {1, 0}}.
  Operator(std::initializer_list<std::initializer_list<complex>> rows);

  static Operator zeros(std::size_t dim) { return Operator(dim); }
  static Operator identity(std::size_t dim);
  static Operator diag(std::span<const complex> values);
  static Operator diag(std::initializer_list<complex> values);
  /// |psi><psi| for a (not necessarily normalized) vector.
  static Operator projector(std::span<const complex> psi);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<complex> entries() { return data_; }
  std::span<const complex> entries() const { return data_; }

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(complex scale);
  /// axpy: *this += scale * other.
  Operator& add_scaled(complex scale, const Operator& other);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(Operator a) { return a *= -1.0; }
  friend Operator operator*(Operator a, complex s) { return a *= s; }
  friend Operator operator*(complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

  friend bool operator==(const Operator&, const Operator&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<complex> data_;
};

void require_same_dim(const Operator& a, const Operator& b, const char* what);

Operator commutator(const Operator& a, const Operator& b);
Operator dagger(const Operator& a);
Operator transpose(const Operator& a);
Operator conjugate(const Operator& a);
/// Kronecker product a (x) b.
Operator kron(const Operator& a, const Operator& b);

complex trace(const Operator& a);
/// Hilbert-Schmidt pairing tr(a^dagger b).
complex hs_inner(const Operator& a, const Operator& b);
/// tr(a rho).
complex expectation(const Operator& a, const Operator& rho);

double max_abs(const Operator& a);
double max_abs_diff(const Operator& a, const Operator& b);
/// max |A[j,k] - conj(A[k,j])|.
double hermiticity_defect(const Operator& a);
/// Default Hermiticity tolerance: 1e-12 * max(1, maxabs(a)).
bool is_hermitian(const Operator& a, double rel_tol = 1e-12);
/// (a + a^dagger) / 2.
Operator hermitian_part(const Operator& a);
bool all_finite(const Operator& a);

/// Ascending eigenvalues of a Hermitian matrix by cyclic complex Jacobi.
///
/// The input is symmetrized first. Throws Error naming the defect norm when
/// the input is not Hermitian within 1e-12 * max(1, maxabs).
std::vector<double> hermitian_eigenvalues(const Operator& a);

/// Jacobi diagnostics, exposed for testing backward stability.
struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  Operator rotated;                 // final near-diagonal matrix
  int sweeps = 0;
};
JacobiResult jacobi_diagonalize(const Operator& a);

}  // namespace weakinv
