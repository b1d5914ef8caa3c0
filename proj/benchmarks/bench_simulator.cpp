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


#include <vector>

#include <benchmark/benchmark.h>

#include "chadapt/simulator.hpp"

namespace {

using namespace chadapt;

void BM_GenerateDataset(benchmark::State& state) {
  const FeatureProfile p;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_dataset(p, 20.0, n, 11));
  state.SetItemsProcessed(state.iterations() * state.range(0) * p.J);
}
BENCHMARK(BM_GenerateDataset)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_DistortAndScore(benchmark::State& state) {
  const FeatureProfile p;
  const auto clean = generate_dataset(p, 20.0, 20000, 11);
  for (auto _ : state) {
    const auto noisy = distort(clean, 1e-3, p, 12);
    benchmark::DoNotOptimize(empirical_accuracy(noisy, p, kappa_bar(20.0, p)));
  }
  state.SetItemsProcessed(state.iterations() * 20000 * p.J);
}
BENCHMARK(BM_DistortAndScore)->Unit(benchmark::kMillisecond);

void BM_RunAlgorithm1(benchmark::State& state) {
  const LinkState link{1e8, snr_from_db(15.0), 0.012, 200000};
  const auto comp = ComputeProfile::from_flops(2.5e9, 2.3e8, 1e11, 5e11);
  const FeatureProfile p;
  const auto spec = QuantizerSpec::full_alphabet(-1.0, 1.0, 32);
  const ExitSet exits(std::vector<int>{9, 19, 29, 37});
  const auto tasks = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_algorithm1(tasks, link, comp, p, spec, exits, 0.7, 5));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunAlgorithm1)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
