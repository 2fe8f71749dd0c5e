// Copyright 2026 The ness-chain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference versus OpenMP kernels.

#include <benchmark/benchmark.h>

#include "ness/correlations.hpp"
#include "ness/discord_search.hpp"
#include "ness/lindblad.hpp"
#include "ness/sweep.hpp"

namespace {

using namespace ness;

Mat4 bench_state() {
  const auto ss = steady_state({1.0, 6.0, 8.0}, BathSpec::from_mean(1.2, 0.8, 0.01),
                               SteadyStateMethod::nullspace);
  return partial_trace(ss.rho, SpinPair::p13);
}

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_EvaluateGrid(benchmark::State& state) {
  const MeasuredEntropy f(bench_state());
  const auto g = full_sphere_grid(500, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid(f, g, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_EvaluateGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_GridMinimum(benchmark::State& state) {
  const MeasuredEntropy f(bench_state());
  const auto g = full_sphere_grid(500, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(grid_minimum(f, g, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_GridMinimum)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_MinimizeEntropy(benchmark::State& state) {
  const MeasuredEntropy f(bench_state());
  SearchOptions opts;
  opts.execution = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_measured_entropy(f, opts));
}
BENCHMARK(BM_MinimizeEntropy)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMicrosecond);

void BM_Sweep(benchmark::State& state) {
  SweepConfig c;
  c.h_values = grid_values(0.5, 6.5, 8);
  c.k_values = {2.0, 8.0};
  c.temperatures = {{1.6, 0.8}};
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(c, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 16);
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
