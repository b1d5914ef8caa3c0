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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chadapt/rng.hpp"

namespace chadapt {

/// Saturation cap on every concentration parameter.
inline constexpr double kKappaMax = 1e6;

/// A concentration value plus a flag raised when it was clamped to kKappaMax.
struct Concentration {
  double kappa = 0.0;
  bool saturated = false;
};

/// Parameters of vM(mu, kappa). `mu` is stored reduced to (-pi, pi].
class VonMisesParams {
 public:
  /// Throws std::domain_error for non-finite mu or negative/non-finite kappa.
  VonMisesParams(double mu, double kappa);

  double mu() const noexcept { return mu_; }
  double kappa() const noexcept { return kappa_; }

 private:
  double mu_;
  double kappa_;
};

/// Angles in (-pi, pi] with optional class labels in {1..J}.
struct AngularSampleSet {
  std::vector<double> angles;
  std::vector<int> labels;

  bool labeled() const noexcept { return !labels.empty(); }
  std::size_t size() const noexcept { return angles.size(); }

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

// Bessel functions. Power series below x = 15, scaled asymptotic expansion
// above; both return e^(-x) I_n(x) so nothing overflows up to kKappaMax.

/// e^(-x) I0(x) for x >= 0.
double bessel_i0_scaled(double x);

/// e^(-x) I1(x) for x >= 0.
double bessel_i1_scaled(double x);

/// A(kappa) = I1(kappa) / I0(kappa), the mean resultant length of vM(., kappa).
double bessel_ratio(double kappa);

/**
 * Inverse of bessel_ratio on [0, 1).
 *
 * Starts from r(2 - r^2)/(1 - r^2) and runs Newton on A(k) - r inside a
 * shrinking bracket, bisecting whenever a Newton step leaves it. Converges to
 * relative step 1e-13 (at most 200 iterations). Values of r beyond A(kKappaMax)
 * return kKappaMax with `saturated` set.
 */
Concentration bessel_ratio_inv(double r);

/// Reduce an angle to (-pi, pi]; -pi maps to pi.
double normalize_angle(double theta);

/// Angular distance in [0, pi].
double angular_distance(double b1, double b2);

/// von Mises density, evaluated in scaled form.
double vm_pdf(double theta, const VonMisesParams& params);

/// One Best-Fisher draw. kappa below 1e-8 draws uniformly.
double draw_von_mises(Philox4x32& rng, const VonMisesParams& params);

/// `n` independent vM draws from stream `stream` of `seed`.
AngularSampleSet vm_sample(const VonMisesParams& params, std::size_t n,
                           std::uint64_t seed, std::uint64_t stream = 0);

/**
 * kappa-hat = A^-1(R-bar), R-bar the normalized resultant length.
 * Needs at least two samples. R-bar >= 1 - 1e-12 saturates.
 */
Concentration estimate_kappa(std::span<const double> angles);

/// Mean of per-class estimate_kappa over classes 1..J.
Concentration estimate_kappa_pooled(const AngularSampleSet& samples, int J);

/// vM concentration matched to a wrapped N(0, sigma2): A^-1(exp(-sigma2/2)).
Concentration wrapped_gaussian_kappa(double sigma2);

}  // namespace chadapt
