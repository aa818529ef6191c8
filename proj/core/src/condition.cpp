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
#include "npovm/condition.hpp"

#include <cmath>

#include "npovm/errors.hpp"

namespace npovm {
namespace {

ComplexMatrix on_slot(const ComplexMatrix& op, std::size_t other_dim, EncodedSlot slot) {
  const ComplexMatrix id = identity(other_dim);
  return slot == EncodedSlot::second ? kron(id, op) : kron(op, id);
}

}  // namespace

ConditionReport check_sufficient_condition(const ComplexMatrix& u, const ComplexMatrix& local,
                                           const ConditionOptions& opts) {
  if (local.rows() != 2 || local.cols() != 2) {
    throw DimensionError("check_sufficient_condition: the Pauli instantiation needs a qubit local unitary");
  }
  if (u.rows() != 4 || u.cols() != 4) {
    throw DimensionError("check_sufficient_condition: U must act on two qubits");
  }
  ConditionReport report;
  report.phase_convention = opts.phase;
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<ComplexMatrix, 4> lhs, rhs;
    Complex overlap = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const ComplexMatrix sk = pauli(i) * pauli(k);
      lhs[k] = u * on_slot(local.adjoint() * sk * local, 2, opts.slot);
      rhs[k] = on_slot(sk, 2, opts.slot) * u;
      overlap += (rhs[k].adjoint() * lhs[k]).trace();
    }
    Complex phase = 1.0;
    if (opts.phase == PhaseConvention::up_to_global_phase && std::abs(overlap) > 0.0) {
      phase = overlap / std::abs(overlap);
    }
    bool row_ok = true;
    for (std::size_t k = 0; k < 4; ++k) {
      report.residuals[i][k] = operator_norm(lhs[k] - phase * rhs[k]);
      row_ok = row_ok && report.residuals[i][k] <= opts.tol;
    }
    if (row_ok && !report.witness_i) report.witness_i = i;
  }
  report.satisfied = report.witness_i.has_value();
  return report;
}

ComplexMatrix derive_um_prime(const ComplexMatrix& um, const ComplexMatrix& u, const ComplexMatrix& u1,
                              const ComplexMatrix& u2, std::size_t i, EncodedSlot slot) {
  if (i > 3) throw DimensionError("derive_um_prime: Pauli index must be in 0..3");
  if (u1.rows() != 2 || u2.rows() != 2 || u.rows() != 4 || um.rows() != 4) {
    throw DimensionError("derive_um_prime: expects qubit local unitaries and two-qubit U, U_M");
  }
  for (const auto* m : {&um, &u, &u1, &u2}) {
    if (!is_unitary(*m)) throw PreconditionError("derive_um_prime: inputs must be unitary");
  }
  const ComplexMatrix si = on_slot(pauli(i), 2, slot);
  const ComplexMatrix local = kron(u1, u2);
  const ComplexMatrix um_prime = um * si * u * local.adjoint() * si;
  const ComplexMatrix residual = um_prime * si * local - um * si * u;
  if (residual.cwiseAbs().maxCoeff() > 1e-9) {
    throw InvariantError("derive_um_prime: defining relation U_M' s_i W = U_M s_i U failed");
  }
  return um_prime;
}

ComplexMatrix xx_example_measurement() {
  ComplexMatrix m(4, 4);
  m << 1, 0, 0, 1,
       0, 1, 1, 0,
       0, 1, -1, 0,
       1, 0, 0, -1;
  return m / std::sqrt(2.0);
}

}  // namespace npovm
