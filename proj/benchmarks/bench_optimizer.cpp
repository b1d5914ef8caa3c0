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

#include "chadapt/optimizer.hpp"

namespace {

using namespace chadapt;

struct Scenario {
  LinkState link{1e8, snr_from_db(15.0), 0.012, 200000};
  ComputeProfile comp = ComputeProfile::from_flops(2.5e9, 2.3e8, 1e11, 5e11);
  FeatureProfile profile;
  QuantizerSpec spec = QuantizerSpec::full_alphabet(-1.0, 1.0, 32);
  ExitSet exits{std::vector<int>{9, 14, 19, 29, 34, 37}};
};

void BM_SolveCr(benchmark::State& state) {
  const Scenario s;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_cr(s.link, s.comp, s.profile, s.spec, 0.7));
  }
}
BENCHMARK(BM_SolveCr);

void BM_SolveDiscrete(benchmark::State& state) {
  const Scenario s;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_discrete(s.link, s.comp, s.profile, s.spec, s.exits, 0.7));
  }
}
BENCHMARK(BM_SolveDiscrete);

void BM_BruteForce(benchmark::State& state) {
  const Scenario s;
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force(s.link, s.comp, s.profile, s.spec, s.exits, 0.7));
  }
}
BENCHMARK(BM_BruteForce);

}  // namespace

BENCHMARK_MAIN();
