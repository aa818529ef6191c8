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
#include <span>
#include <vector>

namespace npovm {

struct SimplexOptions {
  /// Simplex iterations summed over all rounds (one reflection step and its follow-ups each).
  int max_iters = 2000;
  /// Stop when the spread of simplex values drops below tol * (1 + |best|).
  double tol = 1e-8;
  double initial_step = 0.5;
  /// Number of times the simplex is rebuilt around the incumbent after it collapses.
  int rebuilds = 2;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes `f` with the Nelder-Mead downhill simplex (standard coefficients
/// 1, 2, 1/2, 1/2). Deterministic for a fixed starting point.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                          const SimplexOptions& opts = {});

}  // namespace npovm
