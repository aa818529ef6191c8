// Copyright 2026 The npovm-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "npovm/tensor.hpp"

namespace npovm {

enum class PhaseConvention { exact, up_to_global_phase };

/// Register slot carrying the encoded qubit, i.e. where the Pauli factors of
/// the encoding's decomposition act.
enum class EncodedSlot { first, second };

struct ConditionOptions {
  double tol = 1e-8;
  PhaseConvention phase = PhaseConvention::up_to_global_phase;
  EncodedSlot slot = EncodedSlot::second;
};

struct ConditionReport {
  bool satisfied = false;
  std::optional<std::size_t> witness_i;
  /// residuals[i][k] = || U (1 (x) V^dag s_i s_k V) - (1 (x) s_i s_k) U || (operator norm),
  /// with the Pauli factors on the encoded slot and V the local unitary of that slot.
  std::array<std::array<double, 4>, 4> residuals{};
  PhaseConvention phase_convention = PhaseConvention::up_to_global_phase;
};

/// Checks whether some Pauli index i makes
///   U (1 (x) V^dag s_i s_k V) = (1 (x) s_i s_k) U   for every k,
/// which lets a product-input (positive) strategy with local unitary V on the
/// encoded slot reproduce the statistics of the correlated strategy with
/// preparation U. Under up_to_global_phase each row i may absorb one common
/// phase (the one best aligning all four k in Frobenius norm).
ConditionReport check_sufficient_condition(const ComplexMatrix& u, const ComplexMatrix& local,
                                           const ConditionOptions& opts = {});

/// U_M' = U_M (1 (x) s_i) U (U1 (x) U2)^dag (1 (x) s_i), with s_i on the encoded
/// slot. Verifies U_M' (1 (x) s_i)(U1 (x) U2) = U_M (1 (x) s_i) U at runtime and
/// throws InvariantError if it fails.
ComplexMatrix derive_um_prime(const ComplexMatrix& um, const ComplexMatrix& u, const ComplexMatrix& u1,
                              const ComplexMatrix& u2, std::size_t i, EncodedSlot slot = EncodedSlot::second);

/// Measurement unitary of the XX example, rows (1,0,0,1), (0,1,1,0),
/// (0,1,-1,0), (1,0,0,-1) scaled by 1/sqrt(2).
ComplexMatrix xx_example_measurement();

}  // namespace npovm
