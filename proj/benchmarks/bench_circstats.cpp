/*
   Copyright 2026 The chadapt Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include <cmath>

#include <benchmark/benchmark.h>

#include "chadapt/circstats.hpp"
#include "chadapt/rng.hpp"

namespace {

using namespace chadapt;

void BM_BesselRatio(benchmark::State& state) {
  const double kappa = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_ratio(kappa));
}
BENCHMARK(BM_BesselRatio)->Arg(1)->Arg(10)->Arg(100)->Arg(10000);

void BM_BesselRatioInv(benchmark::State& state) {
  const double r = bessel_ratio(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_ratio_inv(r));
}
BENCHMARK(BM_BesselRatioInv)->Arg(1)->Arg(10)->Arg(100)->Arg(10000);

void BM_DrawVonMises(benchmark::State& state) {
  Philox4x32 rng(1);
  const VonMisesParams params(0.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(draw_von_mises(rng, params));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DrawVonMises)->Arg(0)->Arg(1)->Arg(20)->Arg(1000);

void BM_EstimateKappa(benchmark::State& state) {
  const auto s = vm_sample(VonMisesParams(0.0, 5.0), static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_kappa(s.angles));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateKappa)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
