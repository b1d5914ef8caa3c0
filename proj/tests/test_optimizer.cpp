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

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "chadapt/optimizer.hpp"
#include "chadapt/rng.hpp"

namespace {

using namespace chadapt;

struct Instance {
  LinkState link;
  ComputeProfile comp;
  FeatureProfile profile;
  QuantizerSpec spec = QuantizerSpec::full_alphabet(-1, 1, 32);
  ExitSet exits{{9, 19, 29, 37}};
  double p0 = 0.6;
};

Instance base(double snr_db = 15.0) {
  Instance in;
  in.link.bandwidth_hz = 1e8;
  in.link.snr_linear = snr_from_db(snr_db);
  in.link.t_max_s = 0.012;
  in.link.d = 200000;
  in.comp = {4.6e-4, 0.025};
  return in;
}

Instance random_instance(Philox4x32& rng) {
  auto u = [&] { return uniform_open01(rng); };
  Instance in = base(-5 + 35 * u());
  in.link.d = 20000 + static_cast<std::uint64_t>(4e5 * u());
  in.comp = {1e-3 * u(), 0.05 * u()};
  in.profile.c1 = 0.1 + 0.9 * u();
  in.profile.c2 = u();
  in.profile.c3 = 50 + 500 * u();
  in.profile.c4 = 0.01 + 0.29 * u();
  std::set<int> layers;
  const int count = 1 + static_cast<int>(6 * u());
  while (static_cast<int>(layers.size()) < count) {
    layers.insert(1 + static_cast<int>(in.profile.L * u()) % in.profile.L);
  }
  in.exits = ExitSet(std::vector<int>(layers.begin(), layers.end()));
  if (u() < 0.3) in.spec.bit_alphabet = {0, 2, 4, 6, 8, 12, 16, 24, 32};
  in.p0 = 0.11 + 0.88 * u();
  return in;
}

Plan discrete(const Instance& in) {
  return solve_discrete(in.link, in.comp, in.profile, in.spec, in.exits, in.p0);
}
Plan brute(const Instance& in) {
  return brute_force(in.link, in.comp, in.profile, in.spec, in.exits, in.p0);
}
Plan cr(const Instance& in) { return solve_cr(in.link, in.comp, in.profile, in.spec, in.p0); }

TEST(ExitSet, Invariants) {
  EXPECT_THROW(ExitSet({}), std::invalid_argument);
  EXPECT_THROW(ExitSet({3, 3}), std::invalid_argument);
  EXPECT_THROW(ExitSet({5, 2}), std::invalid_argument);
  EXPECT_THROW(ExitSet({0, 2}), std::invalid_argument);
  EXPECT_THROW(ExitSet({9, 40}).validate_against(FeatureProfile{}), std::invalid_argument);
  EXPECT_NO_THROW(ExitSet({9, 39}).validate_against(FeatureProfile{}));
  EXPECT_EQ(ExitSet({2, 7}).deepest(), 7);
}

TEST(SolveCr, LooseTargetNeedsOneLayer) {
  auto in = base(25);
  in.p0 = 0.1 + 1e-6;
  const Plan p = cr(in);
  EXPECT_TRUE(p.feasible);
  EXPECT_EQ(p.ell, 1.0);
}

TEST(SolveCr, UnreachableTarget) {
  auto in = base(25);
  in.p0 = 0.95;
  const Plan p = cr(in);
  EXPECT_FALSE(p.feasible);
  EXPECT_EQ(p.epr, 0.0);
  EXPECT_EQ(p.ell, in.profile.L);
  EXPECT_GT(p.predicted_accuracy, 0.1);
}

TEST(SolveCr, BitWidthFillsBudget) {
  const auto in = base(10);
  const Plan p = cr(in);
  EXPECT_NEAR(p.t_comm, in.link.t_max_s, 1e-15);
  EXPECT_NEAR(p.q, max_bitwidth_continuous(in.link), 1e-12);
}

TEST(SolveCr, EprNonDecreasingInSnr) {
  double prev = 0.0;
  for (double db = -5; db <= 25; db += 0.5) {
    auto in = base(db);
    in.p0 = 0.7;
    const double e = cr(in).epr;
    EXPECT_GE(e, prev) << "snr_db=" << db;
    prev = e;
  }
}

TEST(SolveDiscrete, SingleExit) {
  auto in = base(20);
  in.exits = ExitSet({39});
  const Plan p = discrete(in);
  ASSERT_TRUE(p.feasible);
  EXPECT_EQ(p.ell, 39.0);
}

TEST(SolveDiscrete, CeilingWithinExitSet) {
  auto in = base(15);
  const double q = *max_bitwidth_discrete(in.link, in.spec);
  in.p0 = accuracy_at_variance(quant_variance(q, in.spec), 9.2, in.profile);
  const auto l_plus = min_depth_for_accuracy(quant_variance(q, in.spec), in.p0, in.profile);
  ASSERT_TRUE(l_plus.has_value());
  EXPECT_NEAR(*l_plus, 9.2, 1e-5);
  const Plan p = discrete(in);
  EXPECT_TRUE(p.feasible);
  EXPECT_EQ(p.ell, 19.0);
  EXPECT_EQ(p.q, q);
}

TEST(SolveDiscrete, ExactExitIsKept) {
  auto in = base(15);
  const double q = *max_bitwidth_discrete(in.link, in.spec);
  in.p0 = accuracy_at_variance(quant_variance(q, in.spec), 19.0, in.profile);
  EXPECT_EQ(discrete(in).ell, 19.0);
}

TEST(SolveDiscrete, InfeasibleConvention) {
  auto in = base(-5);
  in.p0 = 0.75;
  const Plan p = discrete(in);
  EXPECT_FALSE(p.feasible);
  EXPECT_EQ(p.epr, 0.0);
  EXPECT_EQ(p.ell, 37.0);
  EXPECT_LT(p.predicted_accuracy, in.p0);
}

TEST(SolveDiscrete, NoBitWidthFits) {
  auto in = base(-20);
  in.spec.bit_alphabet = {4, 8, 16};
  const Plan p = discrete(in);
  EXPECT_FALSE(p.feasible);
  EXPECT_EQ(p.q, 0.0);
  EXPECT_EQ(p.epr, 0.0);
  EXPECT_DOUBLE_EQ(p.predicted_accuracy, 0.1);
  EXPECT_EQ(p.ell, 37.0);
}

TEST(SolveDiscrete, RejectsBadTarget) {
  auto in = base();
  in.p0 = 0.1;
  EXPECT_THROW(discrete(in), std::invalid_argument);
  in.p0 = 1.0;
  EXPECT_THROW(cr(in), std::invalid_argument);
  EXPECT_THROW(brute(in), std::invalid_argument);
}

TEST(BruteForce, Singleton) {
  auto in = base(20);
  in.spec.bit_alphabet = {8};
  in.exits = ExitSet({30});
  in.p0 = 0.5;
  const Plan p = brute(in);
  EXPECT_TRUE(p.feasible);
  EXPECT_EQ(p.q, 8.0);
  EXPECT_EQ(p.ell, 30.0);
  in.p0 = 0.99;
  EXPECT_FALSE(brute(in).feasible);
}

TEST(Optimizer, DiscreteMatchesBruteForce) {
  Philox4x32 rng(2718);
  int feasible = 0;
  for (int i = 0; i < 400; ++i) {
    const Instance in = random_instance(rng);
    const Plan a = discrete(in), b = brute(in);
    ASSERT_EQ(a.feasible, b.feasible) << "instance " << i;
    ASSERT_EQ(a.q, b.q) << "instance " << i;
    ASSERT_EQ(a.ell, b.ell) << "instance " << i;
    ASSERT_EQ(a.epr, b.epr) << "instance " << i;
    feasible += a.feasible;
  }
  EXPECT_GT(feasible, 100);
  EXPECT_LT(feasible, 390);
}

TEST(Optimizer, CrDominates) {
  Philox4x32 rng(99);
  for (int i = 0; i < 300; ++i) {
    const Instance in = random_instance(rng);
    EXPECT_GE(cr(in).epr, discrete(in).epr) << "instance " << i;
  }
}

TEST(Optimizer, NestedExitSetsOrdered) {
  const std::vector<std::vector<int>> nested = {
      {9, 37}, {9, 19, 37}, {9, 19, 29, 37}, {9, 19, 29, 34, 37}, {9, 14, 19, 29, 34, 37}};
  for (double db = -5; db <= 25; db += 1) {
    for (double p0 : {0.5, 0.6, 0.7}) {
      double prev = -1.0;
      for (const auto& layers : nested) {
        auto in = base(db);
        in.exits = ExitSet(layers);
        in.p0 = p0;
        const double e = discrete(in).epr;
        EXPECT_GE(e, prev) << "snr_db=" << db << " p0=" << p0;
        prev = e;
      }
    }
  }
}

TEST(Optimizer, LowerTargetNeverLowersEpr) {
  Philox4x32 rng(4);
  for (int i = 0; i < 200; ++i) {
    Instance in = random_instance(rng);
    const double high = discrete(in).epr;
    const double cr_high = cr(in).epr;
    in.p0 = 0.1 + (in.p0 - 0.1) * uniform_open01(rng);
    EXPECT_GE(discrete(in).epr, high);
    EXPECT_GE(cr(in).epr, cr_high);
  }
}

TEST(Optimizer, FeasiblePlansSatisfyConstraints) {
  Philox4x32 rng(8);
  for (int i = 0; i < 300; ++i) {
    const Instance in = random_instance(rng);
    for (const Plan& p : {discrete(in), cr(in)}) {
      EXPECT_LE(p.t_comm, in.link.t_max_s * (1 + 1e-12));
      if (!p.feasible) continue;
      EXPECT_GE(p.predicted_accuracy, in.p0);
      EXPECT_DOUBLE_EQ(p.predicted_accuracy, accuracy_model(p.q, p.ell, in.profile, in.spec));
      EXPECT_DOUBLE_EQ(p.epr, epr(p.q, p.ell, in.link, in.comp));
    }
  }
}

}  // namespace
