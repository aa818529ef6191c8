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

#include <cstdint>
#include <string>
#include <vector>

#include "npovm/lab/sweep.hpp"

namespace npovm::lab {

enum class Figure { fig2, fig3 };
Figure parse_figure(const std::string& s);

struct ReproduceOptions {
  std::string out_dir = "results";
  std::uint64_t seed = 2024;
  int restarts = 20;
  int jobs = 1;
};

/// Least-squares fit of y = a1 (x^2 - x) + a2.
struct SymmetricParabola {
  double a1 = 0.0;
  double a2 = 0.0;
};
SymmetricParabola fit_symmetric_parabola(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares fit of y = c2 x^2 + c1 x + c0.
struct Quadratic {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double vertex() const { return -c1 / (2.0 * c2); }
};
Quadratic fit_quadratic(const std::vector<double>& x, const std::vector<double>& y);

/// Delta_P - Delta_G per grid value, from a sweep that ran both classes.
struct GapCurve {
  std::vector<double> values;
  std::vector<double> gaps;
  std::vector<bool> converged;  // both classes converged at this point

  double argmin() const;
  double max_gap() const;
  double min_gap() const;
};
GapCurve gap_curve(const std::vector<SweepRow>& rows);

struct FigureRun {
  std::string name;  // e.g. "fig3_h_k0.2"
  SweepConfig config;
  SweepResult result;
};

/// The sweeps behind a figure, with outputs placed in opts.out_dir.
std::vector<SweepConfig> figure_configs(Figure fig, const ReproduceOptions& opts);

struct ReproduceReport {
  Figure figure = Figure::fig2;
  std::vector<FigureRun> runs;
  std::string summary;
  int warnings = 0;
  int excluded_rows = 0;
};

/// Runs every sweep of the figure, writes CSVs and manifests, and builds the
/// summary block.
ReproduceReport reproduce(Figure fig, const ReproduceOptions& opts);

}  // namespace npovm::lab
