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


#include <benchmark/benchmark.h>

#include "chadapt/accuracy.hpp"

namespace {

using namespace chadapt;

void BM_AccuracyOfKappa(benchmark::State& state) {
  const double kappa = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(accuracy_of_kappa(kappa, 10));
}
BENCHMARK(BM_AccuracyOfKappa)->Arg(1)->Arg(10)->Arg(100)->Arg(1000)->Arg(20000);

void BM_AccuracyModel(benchmark::State& state) {
  const FeatureProfile p;
  const auto spec = QuantizerSpec::full_alphabet(-1.0, 1.0, 32);
  const double q = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(accuracy_model(q, 20.0, p, spec));
}
BENCHMARK(BM_AccuracyModel)->Arg(2)->Arg(6)->Arg(16);

void BM_MinDepth(benchmark::State& state) {
  const FeatureProfile p;
  for (auto _ : state) benchmark::DoNotOptimize(min_depth_for_accuracy(1e-3, 0.7, p));
}
BENCHMARK(BM_MinDepth);

}  // namespace

BENCHMARK_MAIN();
