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
#include <cstdint>
#include <set>

#include <gtest/gtest.h>

#include "chadapt/rng.hpp"

namespace {

using chadapt::Philox4x32;

// Known-answer vectors published with Random123 (philox4x32_10).
TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::encrypt({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (Philox4x32::Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::encrypt({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                       {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (Philox4x32::Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::encrypt({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                       {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (Philox4x32::Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, SameSeedSameSequence) {
  Philox4x32 a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(Philox, StreamsAndSeedsDiffer) {
  Philox4x32 a(42, 0), b(42, 1), c(43, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    seen.insert(a());
    seen.insert(b());
    seen.insert(c());
  }
  EXPECT_EQ(seen.size(), 300u);
}

TEST(Philox, DiscardMatchesStepping) {
  for (std::uint64_t skip : {0u, 1u, 2u, 3u, 7u, 1000u}) {
    Philox4x32 a(9, 3), b(9, 3);
    for (std::uint64_t i = 0; i < skip; ++i) a();
    b.discard(skip);
    for (int i = 0; i < 10; ++i) ASSERT_EQ(a(), b()) << "skip=" << skip;
  }
}

TEST(Philox, DiscardAfterPartialBlock) {
  Philox4x32 a(5), b(5);
  a();
  b();
  for (int i = 0; i < 5; ++i) a();
  b.discard(5);
  EXPECT_EQ(a(), b());
}

TEST(Uniform, OpenIntervalAndMoments) {
  Philox4x32 rng(1);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = chadapt::uniform_open01(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sum2 / n - mean * mean, 1.0 / 12, 2e-3);
}

TEST(Normal, Moments) {
  Philox4x32 rng(2);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = chadapt::standard_normal(rng);
    ASSERT_TRUE(std::isfinite(z));
    sum += z;
    sum2 += z * z;
    sum4 += z * z * z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 5 / std::sqrt(n));
  EXPECT_NEAR(sum2 / n, 1.0, 0.015);
  EXPECT_NEAR(sum4 / n, 3.0, 0.1);
}

TEST(MixSeed, DistinctChildren) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 4; ++s) {
    for (std::uint64_t i = 0; i < 256; ++i) seen.insert(chadapt::mix_seed(s, i));
  }
  EXPECT_EQ(seen.size(), 1024u);
  EXPECT_EQ(chadapt::mix_seed(11, 3), chadapt::mix_seed(11, 3));
}

}  // namespace
