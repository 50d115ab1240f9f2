// Copyright 2026 The rigidlab Authors
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

// Serial reference vs OpenMP kernels on the hot diagnostics. Arg 0 is the
// serial path, arg 1 the parallel one.

#include <benchmark/benchmark.h>

#include "rigidlab/group_action.hpp"
#include "rigidlab/mixing.hpp"
#include "rigidlab/rigidity.hpp"

namespace {

using namespace rigidlab;

Exec exec_of(const benchmark::State& s) { return s.range(0) == 0 ? Exec::kSerial : Exec::kParallel; }

void BM_GridSweepCatMap(benchmark::State& state) {
  const auto spec = TransformSpec::toral(kCatMap);
  const GridPlan grid{512, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(grid_sweep_modulus(spec, 3, grid, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_GridSweepCatMap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MonteCarloCorrelation(benchmark::State& state) {
  const auto spec = TransformSpec::toral(kCatMap);
  const Region a = Region::torus({{0.0, 0.5, 0.0, 1.0}});
  const auto mu = PartitionMeasure::reference(SpaceKind::kTorus);
  for (auto _ : state) {
    benchmark::DoNotOptimize(correlation(spec, 17, a, a, mu, Method::monte_carlo(5, 200000), exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * 200000);
}
BENCHMARK(BM_MonteCarloCorrelation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MeasurePreservation(benchmark::State& state) {
  const auto spec = TransformSpec::twist(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        measure_preservation_deviation(spec, 16, 250000, 11, SamplingScheme::kStratified, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * 250000);
}
BENCHMARK(BM_MeasurePreservation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CesaroFourierSup(benchmark::State& state) {
  const auto seq = powers_of_two(1, 40);
  for (auto _ : state) benchmark::DoNotOptimize(cesaro_fourier_stats(seq, 40, 1 << 16, exec_of(state)));
}
BENCHMARK(BM_CesaroFourierSup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OperatorNormWitness(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm_witness(1000000, 4096, exec_of(state)));
}
BENCHMARK(BM_OperatorNormWitness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
