/*
 Copyright 2026 The laxsynth Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "laxsynth/conjugate.hpp"
#include "laxsynth/lax.hpp"
#include "laxsynth/net.hpp"
#include "laxsynth/synth.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace laxsynth;

void BM_GearSolve(benchmark::State& state) {
  const double dt = 1.0 / static_cast<double>(state.range(0));
  const Problem p = gear_preset(dt);
  for (auto _ : state) {
    const LaxSolution sol = solve_lax(p, LaxMode::hard());
    benchmark::DoNotOptimize(sol.objective);
  }
  state.SetLabel("steps=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_GearSolve)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_HstarQuery(benchmark::State& state) {
  const HullModel h = sample_control_hull(gear_preset(), 0.0);
  Vec b(4);
  b << 0.0, -0.1, 0.0, 0.11;
  for (auto _ : state) benchmark::DoNotOptimize(hstar(h, b).value.value());
}
BENCHMARK(BM_HstarQuery);

void BM_SampleHull(benchmark::State& state) {
  const Problem p = gear_preset();
  const Vec x = Vec::Zero(4);
  const HullSampling density{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(sample_hull(p, 0.0, x, density).size());
}
BENCHMARK(BM_SampleHull)->Arg(17)->Arg(65)->Arg(257);

void BM_BuildNet(benchmark::State& state) {
  const ControlSet U = gear_preset().controls;
  const double delta = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_net(U, delta).size());
}
BENCHMARK(BM_BuildNet)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_NearestVertex(benchmark::State& state) {
  const Problem p = gear_preset(0.01);
  const LaxSolution sol = solve_lax(p, LaxMode::hard());
  const DeltaNet net = uniform_net(p.controls, 0.02, 50);
  for (auto _ : state) benchmark::DoNotOptimize(nearest_vertex(p, sol, net).u.size());
}
BENCHMARK(BM_NearestVertex)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
