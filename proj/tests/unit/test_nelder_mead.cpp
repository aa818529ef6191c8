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

#include <cmath>

#include "npovm/nelder_mead.hpp"

namespace npovm {
namespace {

double rosenbrock(std::span<const double> x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

TEST(NelderMead, MinimizesQuadraticBowl) {
  auto f = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1.0) * std::pow(x[i] - 0.1 * i, 2);
    return s;
  };
  const SimplexResult r = nelder_mead(f, std::vector<double>(5, 1.0), {5000, 1e-14, 0.5, 2});
  EXPECT_TRUE(r.converged);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(r.x[i], 0.1 * i, 1e-4);
  EXPECT_LT(r.value, 1e-9);
}

TEST(NelderMead, SolvesRosenbrock) {
  const SimplexResult r = nelder_mead(rosenbrock, {-1.2, 1.0}, {5000, 1e-15, 0.5, 3});
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(NelderMead, IterationBudgetIsRespected) {
  const SimplexResult r = nelder_mead(rosenbrock, {-1.2, 1.0}, {10, 1e-15, 0.5, 2});
  EXPECT_LE(r.iterations, 10);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.value, rosenbrock(std::vector<double>{-1.2, 1.0}));
}

TEST(NelderMead, DeterministicForFixedStart) {
  const SimplexResult a = nelder_mead(rosenbrock, {0.3, -0.4});
  const SimplexResult b = nelder_mead(rosenbrock, {0.3, -0.4});
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.evals, b.evals);
}

TEST(NelderMead, NeverReturnsWorseThanStart) {
  auto bumpy = [](std::span<const double> x) { return std::sin(5 * x[0]) * std::cos(3 * x[1]) + 0.01 * x[0] * x[0]; };
  for (double s : {-2.0, 0.0, 1.5}) {
    const std::vector<double> x0{s, -s};
    EXPECT_LE(nelder_mead(bumpy, x0).value, bumpy(x0));
  }
}

TEST(NelderMead, ZeroDimensionalProblem) {
  const SimplexResult r = nelder_mead([](std::span<const double>) { return 3.0; }, {});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.value, 3.0);
}

}  // namespace
}  // namespace npovm
