// Copyright 2026 The clgcd Authors
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

#include <benchmark/benchmark.h>

#include "clgcd/dynamics.hpp"
#include "clgcd/experiments.hpp"
#include "clgcd/spectral.hpp"

using namespace clgcd;

namespace {

// range(0) selects the driver: 0 serial reference, 1 OpenMP.
void BM_MeanCostsSampled(benchmark::State& state) {
  const OmegaSpec spec{1000000, OmegaMode::sampled, 200000, 1978, false};
  for (auto _ : state) {
    auto r = state.range(0) ? mean_costs(spec) : mean_costs_serial(spec);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * 200000);
}
BENCHMARK(BM_MeanCostsSampled)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MeanCostsExhaustive(benchmark::State& state) {
  const OmegaSpec spec{3000, OmegaMode::exhaustive, 0, 0, false};
  for (auto _ : state) {
    auto r = state.range(0) ? mean_costs(spec) : mean_costs_serial(spec);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MeanCostsExhaustive)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BuildMatrix(benchmark::State& state) {
  const CollocationGrid grid(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto m = state.range(0) ? build_matrix(1.0, 0.0, grid) : build_matrix_serial(1.0, 0.0, grid);
    benchmark::DoNotOptimize(m.data());
  }
}
BENCHMARK(BM_BuildMatrix)->ArgsProduct({{0, 1}, {32, 64, 128}})->Unit(benchmark::kMicrosecond);

void BM_Birkhoff(benchmark::State& state) {
  for (auto _ : state) {
    auto r = state.range(0) ? birkhoff_estimates(256, 5000, 1978)
                            : birkhoff_estimates_serial(256, 5000, 1978);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * 5000);
}
BENCHMARK(BM_Birkhoff)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
