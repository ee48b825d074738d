// Copyright 2026 The idp-curator Authors.
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

// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "idp/bench.h"
#include "idp/dataset.h"
#include "idp/kernels.h"

namespace {

void BM_SmoothSensitivityReference(benchmark::State& state) {
  const auto d = idp::synthesize(idp::Distribution::kStandardNormal, static_cast<std::size_t>(state.range(0)), 1);
  const auto j = static_cast<std::ptrdiff_t>((d.size() + 1) / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(idp::kernels::order_stat_smooth_sensitivity_reference(
        d.values(), d.bounds().lower(), d.bounds().upper(), j, 1e-4));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SmoothSensitivityReference)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_SmoothSensitivityParallel(benchmark::State& state) {
  const auto d = idp::synthesize(idp::Distribution::kStandardNormal, static_cast<std::size_t>(state.range(0)), 1);
  const auto j = static_cast<std::ptrdiff_t>((d.size() + 1) / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(idp::kernels::order_stat_smooth_sensitivity(
        d.values(), d.bounds().lower(), d.bounds().upper(), j, 1e-4));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SmoothSensitivityParallel)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void error_grid_cell(benchmark::State& state, idp::bench::Execution exec) {
  idp::bench::ExperimentPlan plan;
  plan.distributions = {idp::Distribution::kExponential1};
  plan.sizes = {1000};
  plan.epsilons = {1.0};
  plan.trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(idp::bench::run_error_grid(plan, exec));
}

void BM_ErrorGridCellSerial(benchmark::State& state) {
  error_grid_cell(state, idp::bench::Execution::kSerial);
}
BENCHMARK(BM_ErrorGridCellSerial)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ErrorGridCellParallel(benchmark::State& state) {
  error_grid_cell(state, idp::bench::Execution::kParallel);
}
BENCHMARK(BM_ErrorGridCellParallel)->Arg(200)->Unit(benchmark::kMillisecond);

void ci_sampling(benchmark::State& state, idp::bench::Execution exec) {
  for (auto _ : state) benchmark::DoNotOptimize(idp::bench::run_ci_table(1.0, 1.0, 200000, 3, exec));
}

void BM_CiSamplingSerial(benchmark::State& state) { ci_sampling(state, idp::bench::Execution::kSerial); }
BENCHMARK(BM_CiSamplingSerial)->Unit(benchmark::kMillisecond);

void BM_CiSamplingParallel(benchmark::State& state) {
  ci_sampling(state, idp::bench::Execution::kParallel);
}
BENCHMARK(BM_CiSamplingParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
