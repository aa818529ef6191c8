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
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace npovm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// Ordered subsystem dimensions. Slot 0 is the probe, slot 1 the auxiliary,
/// and an environment, when present, is appended last.
struct HilbertSpec {
  std::vector<std::size_t> dims;

  std::size_t total_dim() const;
  std::size_t size() const { return dims.size(); }
};

bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);
bool is_unitary(const ComplexMatrix& m, double tol = kDefaultTol);
/// Hermitian, unit trace and no eigenvalue below -tol.
bool is_density(const ComplexMatrix& m, double tol = kDefaultTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::span<const ComplexMatrix> factors);

/// Reduced operator on the subsystems listed in `keep` (in ascending slot order).
/// An empty `keep` returns the full trace as a 1x1 matrix.
ComplexMatrix partial_trace(const ComplexMatrix& m, const HilbertSpec& spec,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, const HilbertSpec& spec,
                            std::initializer_list<std::size_t> keep);

/// Lifts `op`, which acts on the listed slots (in the listed order), to the
/// full space described by `spec`, acting as identity on every other slot.
ComplexMatrix embed_operator(const ComplexMatrix& op, const HilbertSpec& spec,
                             std::span<const std::size_t> slots);
ComplexMatrix embed_operator(const ComplexMatrix& op, const HilbertSpec& spec,
                             std::initializer_list<std::size_t> slots);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns, vectors.col(k) pairs with values(k)
};

HermitianEigen eig_hermitian(const ComplexMatrix& h, double tol = kDefaultTol);

/// exp(-i s H) for Hermitian H, via the spectral decomposition.
ComplexMatrix expm_unitary(const ComplexMatrix& h, double s, double tol = kDefaultTol);

ComplexMatrix identity(std::size_t dim);
ComplexMatrix projector(const ComplexVector& psi);
ComplexVector basis_state(std::size_t dim, std::size_t index);

/// sigma(0) = I, sigma(1) = X, sigma(2) = Y, sigma(3) = Z.
const ComplexMatrix& pauli(std::size_t index);
const std::array<ComplexMatrix, 4>& pauli_basis();

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

}  // namespace npovm
