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
#include "npovm/fisher.hpp"

#include <cmath>
#include <string>

#include "npovm/errors.hpp"

namespace npovm {

double classical_fisher(const OutcomeDistribution& d) {
  if (d.probs.size() != d.derivs.size()) {
    throw DimensionError("classical_fisher: probs and derivs differ in length");
  }
  double f = 0.0;
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    const double p = d.probs[i];
    const double dp = d.derivs[i];
    if (p < kProbabilityFloor) {
      if (std::abs(dp) < kNegligibleDerivative) continue;
      f += dp * dp / kProbabilityFloor;
    } else {
      f += dp * dp / p;
    }
  }
  return f;
}

OutcomeDistribution prob_derivative(const ProbabilityFn& f, double theta, double step) {
  if (!(step > 0.0)) throw DomainError("prob_derivative: step must be positive");
  OutcomeDistribution out;
  out.probs = f(theta);
  const auto plus = f(theta + step);
  const auto minus = f(theta - step);
  if (plus.size() != out.probs.size() || minus.size() != out.probs.size()) {
    throw DimensionError("prob_derivative: outcome count changed with theta");
  }
  out.derivs.resize(out.probs.size());
  for (std::size_t i = 0; i < out.probs.size(); ++i) {
    out.derivs[i] = (plus[i] - minus[i]) / (2.0 * step);
  }
  return out;
}

namespace {

struct SldParts {
  HermitianEigen eig;
  ComplexMatrix drho_eigenbasis;
};

SldParts sld_parts(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  if (rho.rows() != drho.rows() || rho.cols() != drho.cols()) {
    throw DimensionError("sld: rho and drho differ in shape");
  }
  if (!is_hermitian(rho, 1e-8) || !is_hermitian(drho, 1e-6)) {
    throw PreconditionError("sld: rho and drho must be Hermitian");
  }
  SldParts parts{eig_hermitian(rho, 1e-8), {}};
  parts.drho_eigenbasis = parts.eig.vectors.adjoint() * (0.5 * (drho + drho.adjoint())) * parts.eig.vectors;
  return parts;
}

}  // namespace

SLDOperator sld(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  const auto parts = sld_parts(rho, drho);
  const Eigen::Index n = rho.rows();
  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double s = parts.eig.values(m) + parts.eig.values(k);
      if (s > kSldFloor) l(m, k) = 2.0 * parts.drho_eigenbasis(m, k) / s;
    }
  }
  ComplexMatrix back = parts.eig.vectors * l * parts.eig.vectors.adjoint();
  return {0.5 * (back + back.adjoint())};
}

double qfi_sld(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  const auto parts = sld_parts(rho, drho);
  const Eigen::Index n = rho.rows();
  double f = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double s = parts.eig.values(m) + parts.eig.values(k);
      if (s > kSldFloor) f += 2.0 * std::norm(parts.drho_eigenbasis(m, k)) / s;
    }
  }
  return f;
}

double qfi_pure_unitary(const ComplexVector& psi, const ComplexMatrix& hdot) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-9) {
    throw PreconditionError("qfi_pure_unitary: state is not normalized");
  }
  if (!is_hermitian(hdot)) throw PreconditionError("qfi_pure_unitary: generator is not Hermitian");
  if (hdot.rows() != psi.size()) throw DimensionError("qfi_pure_unitary: dimension mismatch");
  const ComplexVector hpsi = hdot * psi;
  const double n2 = psi.squaredNorm();
  const double mean = psi.dot(hpsi).real() / n2;
  const double second = hpsi.squaredNorm() / n2;
  return std::max(0.0, 4.0 * (second - mean * mean));
}

double spectral_variance_qfi(const SpectralData& s) {
  if (s.eps.size() != s.P.size()) throw DimensionError("spectral data length mismatch");
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < s.eps.size(); ++i) {
    m1 += s.P[i] * s.eps[i];
    m2 += s.P[i] * s.eps[i] * s.eps[i];
  }
  return 4.0 * (m2 - m1 * m1);
}

MaxQfi max_qfi_unitary(const ComplexMatrix& hdot) {
  const auto eig = eig_hermitian(hdot);
  MaxQfi out;
  const auto n = static_cast<std::size_t>(eig.values.size());
  out.spectrum.eps.assign(eig.values.data(), eig.values.data() + n);
  out.spectrum.P.assign(n, 0.0);
  if (n == 1) {
    out.spectrum.P[0] = 1.0;
    return out;
  }
  out.spectrum.P.front() += 0.5;
  out.spectrum.P.back() += 0.5;
  const double spread = out.spectrum.eps.back() - out.spectrum.eps.front();
  out.value = spread * spread;
  return out;
}

}  // namespace npovm
