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
#include "npovm/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace npovm {
namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                          const SimplexOptions& opts) {
  const std::size_t n = x0.size();
  SimplexResult result;
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  if (n == 0) {
    result.x = x0;
    result.value = eval(x0);
    result.evals = evals;
    result.converged = true;
    return result;
  }

  Vertex best{x0, eval(x0)};
  bool converged = false;

  int iterations = 0;
  for (int round = 0; round <= opts.rebuilds && iterations < opts.max_iters; ++round) {
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back(best);
    for (std::size_t i = 0; i < n; ++i) {
      Vertex v{best.x, 0.0};
      v.x[i] += opts.initial_step;
      v.f = eval(v.x);
      simplex.push_back(std::move(v));
    }

    converged = false;
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    while (iterations < opts.max_iters) {
      ++iterations;
      std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      const double spread = simplex.back().f - simplex.front().f;
      if (spread <= opts.tol * (1.0 + std::abs(simplex.front().f))) {
        converged = true;
        break;
      }

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i];
      }
      for (auto& c : centroid) c /= static_cast<double>(n);

      Vertex& worst = simplex.back();
      for (std::size_t i = 0; i < n; ++i) xr[i] = centroid[i] + (centroid[i] - worst.x[i]);
      const double fr = eval(xr);

      if (fr < simplex.front().f) {
        for (std::size_t i = 0; i < n; ++i) xe[i] = centroid[i] + 2.0 * (centroid[i] - worst.x[i]);
        const double fe = eval(xe);
        if (fe < fr) {
          worst = {xe, fe};
        } else {
          worst = {xr, fr};
        }
        continue;
      }
      if (fr < simplex[n - 1].f) {
        worst = {xr, fr};
        continue;
      }

      const bool outside = fr < worst.f;
      for (std::size_t i = 0; i < n; ++i) {
        const double target = outside ? xr[i] : worst.x[i];
        xc[i] = centroid[i] + 0.5 * (target - centroid[i]);
      }
      const double fc = eval(xc);
      if (fc < std::min(fr, worst.f)) {
        worst = {xc, fc};
        continue;
      }

      // shrink towards the best vertex
      for (std::size_t v = 1; v <= n; ++v) {
        for (std::size_t i = 0; i < n; ++i) {
          simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
        }
        simplex[v].f = eval(simplex[v].x);
      }
    }

    auto it = std::min_element(simplex.begin(), simplex.end(),
                               [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const bool improved = it->f < best.f - opts.tol * (1.0 + std::abs(best.f));
    if (it->f < best.f) best = *it;
    if (round > 0 && !improved) break;
  }

  result.x = best.x;
  result.value = best.f;
  result.evals = evals;
  result.iterations = iterations;
  result.converged = converged;
  return result;
}

}  // namespace npovm
