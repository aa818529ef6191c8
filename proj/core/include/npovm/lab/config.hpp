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

#include <map>
#include <string>
#include <vector>

#include "npovm/strategies.hpp"

namespace npovm::lab {

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int count = 2;

  /// Evenly spaced values, both ends included.
  std::vector<double> values() const;
};

struct SweepConfig {
  std::string encoding_id;
  std::string estimated_param;
  Grid grid;
  std::map<std::string, double> fixed_params;
  OptimizerConfig optimizer;
  std::vector<StrategyClass> classes{StrategyClass::positive, StrategyClass::general};
  std::string output_path = "sweep.csv";
  int jobs = 1;

  /// count >= 2, start < stop, known encoding id, known parameter name.
  void validate() const;
};

/// Parses a TOML sweep description. Layout:
///
///   encoding = "xy_h"            # preset id
///   estimated_param = "h"        # optional, must match the preset
///   classes = ["positive", "general"]
///   output = "results/xy_h.csv"
///   jobs = 1
///   [grid]      start, stop, count
///   [fixed]     name = value for held parameters (h, J, gamma, k, t_over_hbar)
///   [optimizer] restarts, max_iters, simplex_tol, seed, warm_start_sld, aux_dim, fd_step
SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

}  // namespace npovm::lab
