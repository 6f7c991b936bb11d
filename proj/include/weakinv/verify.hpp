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
#include <string>
#include <vector>

#include "weakinv/io.hpp"

namespace weakinv {

struct PropertyResult {
  std::string name;
  bool passed = true;
  double worst_defect = 0.0;  // in units of the property's scale
  double tolerance = 0.0;
  std::size_t trials = 0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  /// Negative control: replaces the adjoint in the pairing property with a
  /// deliberately wrong jump term so the property must fail.
  bool break_adjoint = false;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<PropertyResult> properties;

  bool all_passed() const;
  const PropertyResult& find(const std::string& name) const;
};

/// Randomized property suites over dims 2..8: adjoint pairing, shift
/// covariance, trace preservation, Hermiticity propagation, vectorized
/// consistency, unitary limit, spectrum invariance, weak-invariant
/// conservation, finite-difference gradients and the gauge identity.
VerifyReport run_verification(const VerifyOptions& options);

json to_json(const VerifyReport& report);

}  // namespace weakinv
