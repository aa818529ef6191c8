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
#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "npovm/errors.hpp"
#include "npovm/fisher.hpp"
#include "oracles.hpp"

namespace npovm {
namespace {

using namespace npovm::testing;
constexpr double kPi = std::numbers::pi;

std::vector<double> binomial(double t) { return {std::pow(std::cos(t / 2), 2), std::pow(std::sin(t / 2), 2)}; }
std::vector<double> binomial_deriv(double t) { return {-0.5 * std::sin(t), 0.5 * std::sin(t)}; }

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TEST(ClassicalFisher, Examples) {
  const double t = kPi / 3;
  EXPECT_NEAR(classical_fisher({binomial(t), binomial_deriv(t)}), 1.0, 1e-12);
  EXPECT_EQ(classical_fisher({{0.2, 0.3, 0.5}, {0.0, 0.0, 0.0}}), 0.0);
  EXPECT_NEAR(classical_fisher({{0.25, 0.75}, {1.0, -1.0}}), 16.0 / 3.0, 1e-12);
}

TEST(ClassicalFisher, SmallProbabilityGuard) {
  // Negligible derivative on a zero-probability outcome contributes nothing.
  EXPECT_NEAR(classical_fisher({{0.5, 0.5, 0.0}, {1.0, -1.0, 1e-10}}), 4.0, 1e-12);
  // A genuine derivative uses the floor instead of dividing by zero.
  const double f = classical_fisher({{0.5, 0.5, 0.0}, {1.0, -1.0 - 1e-6, 1e-6}});
  EXPECT_TRUE(std::isfinite(f));
  EXPECT_NEAR(f, 4.0 + 2e-6 + 1e-12 / kProbabilityFloor, 1e-3);
}

TEST(ClassicalFisher, InvariantUnderOutcomeRelabeling) {
  Rng rng(1);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> p(5), d(5);
    double s = 0.0, sd = 0.0;
    for (int i = 0; i < 5; ++i) s += (p[i] = u(rng));
    for (int i = 0; i < 5; ++i) p[i] /= s;
    for (int i = 0; i < 4; ++i) sd += (d[i] = u(rng) - 0.5);
    d[4] = -sd;
    const double f = classical_fisher({p, d});
    std::vector<int> perm{0, 1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> pp(5), dd(5);
    for (int i = 0; i < 5; ++i) {
      pp[i] = p[perm[i]];
      dd[i] = d[perm[i]];
    }
    EXPECT_NEAR(classical_fisher({pp, dd}), f, 1e-12 * f);
    EXPECT_NEAR(f, analytic_fisher(p, d), 1e-12 * f);
  }
}

TEST(ProbDerivative, Examples) {
  const OutcomeDistribution c = prob_derivative([](double) { return std::vector<double>{0.3, 0.7}; }, 0.4);
  EXPECT_EQ(c.derivs[0], 0.0);
  EXPECT_EQ(c.derivs[1], 0.0);

  for (double step : {1e-1, 1e-3, 1e-5}) {
    const OutcomeDistribution lin =
        prob_derivative([](double t) { return std::vector<double>{t, 1.0 - t}; }, 0.3, step);
    EXPECT_NEAR(lin.derivs[0], 1.0, 1e-10);
    EXPECT_NEAR(lin.derivs[1], -1.0, 1e-10);
    EXPECT_NEAR(lin.probs[0], 0.3, 1e-16);
  }

  const double t = kPi / 3;
  const OutcomeDistribution b = prob_derivative(binomial, t, 1e-4);
  const auto exact = binomial_deriv(t);
  EXPECT_NEAR(b.derivs[0], exact[0], 1e-8);
  EXPECT_NEAR(b.derivs[1], exact[1], 1e-8);
  EXPECT_NEAR(classical_fisher(b), 1.0, 1e-6);
}

TEST(ProbDerivative, ConvergesAtSecondOrder) {
  const double t = 0.8;
  const double exact = binomial_deriv(t)[0];
  double prev = 0.0;
  for (double step : {0.2, 0.1, 0.05, 0.025}) {
    const double err = std::abs(prob_derivative(binomial, t, step).derivs[0] - exact);
    if (prev > 0.0) EXPECT_NEAR(prev / err, 4.0, 0.1);
    prev = err;
  }
}

TEST(ProbDerivative, RejectsBadStepAndPropagatesDomainErrors) {
  EXPECT_THROW(prob_derivative(binomial, 0.1, 0.0), DomainError);
  EXPECT_THROW(prob_derivative(binomial, 0.1, -1e-3), DomainError);
  const ProbabilityFn bounded = [](double t) {
    if (t < 0.0 || t > 1.0) throw DomainError("outside [0, 1]");
    return std::vector<double>{t, 1.0 - t};
  };
  EXPECT_THROW(prob_derivative(bounded, 0.01, 0.1), DomainError);
  EXPECT_NO_THROW(prob_derivative(bounded, 0.5, 0.1));
}

TEST(Sld, DiagonalFamily) {
  for (double t : {0.1, 0.25, 0.5}) {
    const SLDOperator l = sld(diag2(t, 1 - t), diag2(1, -1));
    EXPECT_LT(max_abs(l.L - diag2(1 / t, -1 / (1 - t))), 1e-12);
    EXPECT_NEAR(qfi_sld(diag2(t, 1 - t), diag2(1, -1)), 1.0 / (t * (1 - t)), 1e-9);
  }
  EXPECT_NEAR(qfi_sld(diag2(0.25, 0.75), diag2(1, -1)), 16.0 / 3.0, 1e-12);
  EXPECT_NEAR(qfi_sld(diag2(0.5, 0.5), diag2(1, -1)), 4.0, 1e-12);
}

TEST(Sld, StaticStateHasZeroSld) {
  Rng rng(2);
  const ComplexMatrix rho = random_density(3, rng);
  const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
  EXPECT_LT(max_abs(sld(rho, zero).L), 1e-15);
  EXPECT_EQ(qfi_sld(rho, zero), 0.0);
}

TEST(Sld, SatisfiesDefiningRelationAndIsHermitian) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 2 + t % 3;
    const ComplexMatrix rho = random_density(d, rng);
    ComplexMatrix drho = random_hermitian(d, rng);
    drho -= drho.trace() / static_cast<double>(d) * identity(d);
    const ComplexMatrix l = sld(rho, drho).L;
    EXPECT_TRUE(is_hermitian(l, 1e-10));
    EXPECT_LT(max_abs(0.5 * (l * rho + rho * l) - drho), 1e-8);
    EXPECT_NEAR(qfi_sld(rho, drho), (rho * l * l).trace().real(), 1e-9);
  }
}

TEST(Sld, PureUnitaryFamilyMatchesVarianceFormula) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 2 + t % 3;
    const ComplexMatrix g = random_hermitian(d, rng);
    const ComplexVector psi = random_pure(d, rng);
    const ComplexMatrix rho = projector(psi);
    const ComplexMatrix drho = Complex(0.0, -1.0) * (g * rho - rho * g);
    EXPECT_NEAR(qfi_sld(rho, drho), qfi_pure_unitary(psi, g), 1e-8);
    EXPECT_NEAR(qfi_pure_unitary(psi, g), variance_qfi(psi, g), 1e-10);
  }
}

TEST(Sld, RejectsNonHermitianInputs) {
  ComplexMatrix m(2, 2);
  m << 0.5, 0.3, 0.0, 0.5;
  EXPECT_THROW(sld(m, diag2(1, -1)), PreconditionError);
  EXPECT_THROW(sld(diag2(0.5, 0.5), m), PreconditionError);
}

TEST(QfiPureUnitary, Examples) {
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_EQ(qfi_pure_unitary(ComplexVector{{s, s}}, sz()), 4.0);
  EXPECT_NEAR(qfi_pure_unitary(basis_state(2, 0), sz()), 0.0, 1e-15);
  EXPECT_NEAR(qfi_pure_unitary(ComplexVector{{Complex(s), Complex(0.0, s)}}, sz()), 4.0, 1e-14);
  EXPECT_THROW(qfi_pure_unitary(ComplexVector{{1.0, 1.0}}, sz()), PreconditionError);
}

TEST(MaxQfiUnitary, Examples) {
  const MaxQfi z = max_qfi_unitary(sz());
  EXPECT_NEAR(z.value, 4.0, 1e-12);
  ASSERT_EQ(z.spectrum.P.size(), 2u);
  EXPECT_NEAR(z.spectrum.P[0], 0.5, 1e-15);
  EXPECT_NEAR(z.spectrum.P[1], 0.5, 1e-15);
  EXPECT_NEAR(grid_max_variance({-1.0, 1.0}, 1000), 4.0, 1e-12);

  EXPECT_NEAR(max_qfi_unitary(id2()).value, 0.0, 1e-12);

  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 0.0, 1.0, 3.0;
  EXPECT_NEAR(max_qfi_unitary(d).value, 9.0, 1e-12);
  EXPECT_NEAR(grid_max_variance({0.0, 1.0, 3.0}, 1000), 9.0, 1e-2);
  EXPECT_NEAR(spectral_variance_qfi(max_qfi_unitary(d).spectrum), 9.0, 1e-12);
}

TEST(MaxQfiUnitary, BoundsEveryPureState) {
  Rng rng(5);
  for (int g = 0; g < 5; ++g) {
    const std::size_t d = 2 + g % 3;
    const ComplexMatrix h = random_hermitian(d, rng);
    const double bound = max_qfi_unitary(h).value;
    for (int t = 0; t < 100; ++t) EXPECT_LE(qfi_pure_unitary(random_pure(d, rng), h), bound + 1e-12);
  }
}

TEST(SpectralVarianceQfi, MatchesDirectSum) {
  const SpectralData s{{-1.0, 0.5, 2.0}, {0.2, 0.3, 0.5}};
  const double m1 = -0.2 + 0.15 + 1.0;
  const double m2 = 0.2 + 0.075 + 2.0;
  EXPECT_NEAR(spectral_variance_qfi(s), 4.0 * (m2 - m1 * m1), 1e-14);
}

}  // namespace
}  // namespace npovm
