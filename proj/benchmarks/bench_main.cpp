// Copyright 2026 The lavgap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "lavgap/construction.hpp"
#include "lavgap/energy.hpp"
#include "lavgap/fixtures.hpp"
#include "lavgap/gapsearch.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/skeleton.hpp"

namespace {

using namespace lavgap;

void BM_EnergyArclengthSqrt(benchmark::State& state) {
  const auto lag = builtin("arclength");
  const auto y = fixtures::sqrt_root();
  for (auto _ : state) benchmark::DoNotOptimize(energy(lag, y));
}
BENCHMARK(BM_EnergyArclengthSqrt)->Unit(benchmark::kMillisecond);

void BM_EnergyManiaPiecewiseLinear(benchmark::State& state) {
  const auto lag = builtin("mania");
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto space = make_space(lag, BoundaryData::both({0.0}, {1.0}), n, 4.0);
  const auto y = project_onto(fixtures::cuberoot(), space);
  for (auto _ : state) benchmark::DoNotOptimize(energy(lag, y));
}
BENCHMARK(BM_EnergyManiaPiecewiseLinear)->RangeMultiplier(4)->Range(32, 512);

void BM_Skeleton(benchmark::State& state) {
  const auto y = fixtures::cuberoot();
  const int h = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(affine_skeleton(y, h));
}
BENCHMARK(BM_Skeleton)->Arg(1)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ConstructStage(benchmark::State& state) {
  const auto lag = builtin("mania");
  const auto y = fixtures::cuberoot();
  StageParams params;
  params.nu0 = 1.0;
  ConstructionOptions opts;
  opts.first_h = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        construct_sequence(lag, y, BoundaryData::final_only({1.0}), params, opts.first_h, opts));
  }
}
BENCHMARK(BM_ConstructStage)->Arg(1)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SegmentSearch(benchmark::State& state) {
  const auto lag = builtin("mania");
  const auto space = make_space(lag, BoundaryData::both({0.0}, {1.0}),
                                static_cast<std::size_t>(state.range(0)), 4.0);
  SearchOptions so;
  so.restarts = 2;
  for (auto _ : state) benchmark::DoNotOptimize(minimize_lipschitz(lag, space, so));
}
BENCHMARK(BM_SegmentSearch)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
