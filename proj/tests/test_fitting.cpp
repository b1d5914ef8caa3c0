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
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "chadapt/fitting.hpp"
#include "chadapt/simulator.hpp"

namespace {

using namespace chadapt;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

DepthSeries on_line(double slope, double intercept, std::vector<double> depths) {
  std::vector<DepthPoint> pts;
  for (double l : depths) pts.push_back({l, slope * l + intercept});
  return DepthSeries(pts);
}

TEST(DepthSeries, Invariants) {
  EXPECT_THROW(DepthSeries({{1, 2}}), std::invalid_argument);
  EXPECT_THROW(DepthSeries({{1, 2}, {1, 3}}), std::invalid_argument);
  EXPECT_THROW(DepthSeries({{1, 2}, {2, NAN}}), std::invalid_argument);
  EXPECT_THROW(DepthSeries({{INFINITY, 2}, {2, 1}}), std::invalid_argument);
  EXPECT_NO_THROW(DepthSeries({{1, -2}, {2, 0}}));
}

TEST(FitAffine, ExactLine) {
  const auto fit = fit_affine(on_line(0.5, 1.0, {1, 4, 9, 16, 25}));
  EXPECT_NEAR(fit.c1, 0.5, 1e-14);
  EXPECT_NEAR(fit.c2, 1.0, 1e-13);
  EXPECT_NEAR(fit.rms, 0.0, 1e-13);
}

TEST(FitAffine, TwoPointsInterpolate) {
  const auto fit = fit_affine(DepthSeries({{3, 7}, {8, -1}}));
  EXPECT_NEAR(fit.c1, -8.0 / 5, 1e-14);
  EXPECT_NEAR(3 * fit.c1 + fit.c2, 7.0, 1e-13);
  EXPECT_NEAR(fit.rms, 0.0, 1e-14);
}

TEST(FitAffine, NoisySeries) {
  Philox4x32 rng(21);
  std::vector<DepthPoint> pts;
  for (int l = 1; l <= 30; ++l) pts.push_back({double(l), 0.35 * l + 0.5 + 0.05 * standard_normal(rng)});
  const auto fit = fit_affine(DepthSeries(pts));
  // OLS standard errors for 30 equally spaced depths and noise sd 0.05.
  const double sxx = 30.0 * (30 * 30 - 1) / 12.0;
  const double se_slope = 0.05 / std::sqrt(sxx);
  const double se_icept = 0.05 * std::sqrt(1.0 / 30 + 15.5 * 15.5 / sxx);
  EXPECT_NEAR(fit.c1, 0.35, 4 * se_slope);
  EXPECT_NEAR(fit.c2, 0.5, 4 * se_icept);
  EXPECT_NEAR(fit.rms, 0.05, 0.02);
}

TEST(FitExponential, ExactCurve) {
  std::vector<DepthPoint> pts;
  for (int l = 1; l <= 39; l += 2) pts.push_back({double(l), 400 * std::exp(-0.08 * l)});
  const auto fit = fit_exponential(DepthSeries(pts));
  EXPECT_NEAR(fit.c3, 400.0, 1e-9);
  EXPECT_NEAR(fit.c4, 0.08, 1e-14);
  EXPECT_NEAR(fit.rms_log, 0.0, 1e-13);
  EXPECT_FALSE(fit.nonpositive_decay);
}

TEST(FitExponential, ConstantSeriesFlagsWarning) {
  const auto fit = fit_exponential(DepthSeries({{1, 5}, {2, 5}, {7, 5}}));
  EXPECT_EQ(fit.c4, 0.0);
  EXPECT_NEAR(fit.c3, 5.0, 1e-14);
  EXPECT_TRUE(fit.nonpositive_decay);
  EXPECT_TRUE(fit_exponential(DepthSeries({{1, 1}, {2, 3}})).nonpositive_decay);
}

TEST(FitExponential, NoisySeries) {
  Philox4x32 rng(22);
  std::vector<DepthPoint> pts;
  for (int l = 1; l <= 30; ++l) {
    pts.push_back({double(l), 400 * std::exp(-0.08 * l + 0.05 * standard_normal(rng))});
  }
  const auto fit = fit_exponential(DepthSeries(pts));
  EXPECT_LT(rel(fit.c3, 400.0), 0.05);
  EXPECT_LT(rel(fit.c4, 0.08), 0.05);
}

TEST(FitExponential, RejectsNonPositive) {
  EXPECT_THROW(fit_exponential(DepthSeries({{1, 1}, {2, 0}})), std::invalid_argument);
  EXPECT_THROW(fit_exponential(DepthSeries({{1, -1}, {2, 1}})), std::invalid_argument);
}

AffineFit estimated_profile_fit(std::size_t n_per_class, std::uint64_t seed) {
  const FeatureProfile p;
  std::vector<DepthPoint> pts;
  for (int l = 5; l <= 35; l += 5) {
    const auto ds = generate_dataset(p, l, n_per_class, seed + l);
    pts.push_back({double(l), estimate_kappa_pooled(ds.samples, p.J).kappa});
  }
  return fit_affine(DepthSeries(pts));
}

TEST(FitRoundTrip, RecoversConcentrationProfile) {
  const FeatureProfile p;
  const auto fit = estimated_profile_fit(10000, 1000);
  EXPECT_LT(rel(fit.c1, p.c1), 0.05);
  EXPECT_LT(rel(fit.c2, p.c2), 0.05);
}

TEST(FitRoundTrip, ResidualShrinksWithSamples) {
  double small = 0.0, large = 0.0;
  for (std::uint64_t s = 0; s < 6; ++s) {
    small += estimated_profile_fit(300, 50 * s).rms;
    large += estimated_profile_fit(10000, 50 * s).rms;
  }
  EXPECT_LT(large, small);
}

}  // namespace
