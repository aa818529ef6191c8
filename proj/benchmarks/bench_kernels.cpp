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
#include <benchmark/benchmark.h>

#include <random>

#include "npovm/encodings.hpp"
#include "npovm/fisher.hpp"
#include "npovm/strategies.hpp"
#include "npovm/tensor.hpp"

namespace {

using namespace npovm;

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  ComplexMatrix a(dim, dim);
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = Complex(n(rng), n(rng));
  return (a + a.adjoint()) / 2.0;
}

void BM_ExpmUnitary(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const ComplexMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(expm_unitary(h, 0.7));
}
BENCHMARK(BM_ExpmUnitary)->Arg(2)->Arg(4)->Arg(8);

void BM_QfiSld(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto dim = static_cast<std::size_t>(state.range(0));
  ComplexMatrix a = random_hermitian(dim, rng);
  const ComplexMatrix rho = (a * a.adjoint() / (a * a.adjoint()).trace().real()).eval();
  const ComplexMatrix drho = random_hermitian(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qfi_sld(rho, drho));
}
BENCHMARK(BM_QfiSld)->Arg(2)->Arg(4)->Arg(8);

void BM_StrategyFisher(benchmark::State& state) {
  const auto cls = state.range(0) ? StrategyClass::general : StrategyClass::positive;
  const EncodingFamily enc = make_preset("xy_h", {{"J", 1.0}, {"gamma", 1.0}, {"k", 0.2}});
  MeasurementStrategy s = MeasurementStrategy::zeros(cls);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& p : s.params) p = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(strategy_fisher(s, enc, 4.5));
}
BENCHMARK(BM_StrategyFisher)->Arg(0)->Arg(1);

void BM_OptimizerRestart(benchmark::State& state) {
  const auto cls = state.range(0) ? StrategyClass::general : StrategyClass::positive;
  const EncodingFamily enc = make_preset("xy_h", {{"J", 1.0}, {"gamma", 1.0}, {"k", 0.0}});
  OptimizerConfig cfg;
  cfg.restarts = 1;
  cfg.seed = 11;
  for (auto _ : state) benchmark::DoNotOptimize(optimize_fisher(cls, enc, 4.5, cfg).fi);
}
BENCHMARK(BM_OptimizerRestart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
