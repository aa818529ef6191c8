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

#include <functional>
#include <vector>

#include "npovm/tensor.hpp"

namespace npovm {

/// Outcome probabilities p(i|theta) and their theta-derivatives.
struct OutcomeDistribution {
  std::vector<double> probs;
  std::vector<double> derivs;
};

inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kNegligibleDerivative = 1e-9;
inline constexpr double kSldFloor = 1e-12;
inline constexpr double kDefaultFdStep = 1e-4;

/// sum_i derivs_i^2 / probs_i. Outcomes below the probability floor contribute
/// nothing when their derivative is negligible and use the floor otherwise.
double classical_fisher(const OutcomeDistribution& d);

using ProbabilityFn = std::function<std::vector<double>(double)>;

/// Central difference of `f` around theta, paired with f(theta).
/// Throws DomainError if step <= 0; domain errors raised by f propagate.
OutcomeDistribution prob_derivative(const ProbabilityFn& f, double theta, double step = kDefaultFdStep);

struct SLDOperator {
  ComplexMatrix L;
};

/// Solves d rho = (L rho + rho L)/2 in the eigenbasis of rho; components whose
/// eigenvalue pair sums to at most kSldFloor are set to zero.
SLDOperator sld(const ComplexMatrix& rho, const ComplexMatrix& drho);

/// Tr[rho L^2] for the SLD of (rho, drho).
double qfi_sld(const ComplexMatrix& rho, const ComplexMatrix& drho);

/// 4 (<psi|Hdot^2|psi> - <psi|Hdot|psi>^2) for a normalized column psi.
double qfi_pure_unitary(const ComplexVector& psi, const ComplexMatrix& hdot);

struct SpectralData {
  std::vector<double> eps;  // eigenvalues of Hdot, ascending
  std::vector<double> P;    // weights over eps
};

struct MaxQfi {
  double value = 0.0;
  SpectralData spectrum;
};

/// Maximum of 4 (sum P eps^2 - (sum P eps)^2) over probability vectors P,
/// attained by equal weight on the two extreme eigenvalues.
MaxQfi max_qfi_unitary(const ComplexMatrix& hdot);

/// 4 (sum P eps^2 - (sum P eps)^2).
double spectral_variance_qfi(const SpectralData& s);

}  // namespace npovm
