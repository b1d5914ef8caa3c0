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

#include <optional>
#include <vector>

namespace chadapt {

/**
 * Analytic feature model for one backbone/classifier pairing.
 *
 * Zero-distortion concentration grows affinely with depth,
 * kappa_bar(l) = c1 l + c2, and the expected squared gradient norm of the
 * angular feature decays as a(l) = c3 exp(-c4 l). Class centroids are
 * equally spaced: mu_j = -pi + (2j - 1) pi / J.
 */
struct FeatureProfile {
  int J = 10;
  double c1 = 0.35;
  double c2 = 0.5;
  double c3 = 400.0;
  double c4 = 0.08;
  int L = 39;

  /// Throws std::invalid_argument naming the violated field.
  void validate() const;

  /// Centroid of class j in 1..J.
  double centroid(int j) const;
};

/// Uniform quantizer over [c_min, c_max] with the admissible bit-widths.
struct QuantizerSpec {
  double c_min = -1.0;
  double c_max = 1.0;
  int q_max = 32;
  std::vector<int> bit_alphabet;  // sorted, within [0, q_max]

  void validate() const;
  double range() const noexcept { return c_max - c_min; }

  /// {0, 1, ..., q_max}.
  static QuantizerSpec full_alphabet(double c_min, double c_max, int q_max);
};

/// (c_max - c_min)^2 / (12 * 2^(2q)) for an integer bit-width.
double uniform_quant_variance(int bits, const QuantizerSpec& spec);

/// Variance when a fraction alpha of features use q0 bits and the rest q0 + 1.
double mixed_quant_variance(int q0, double alpha, const QuantizerSpec& spec);

/// Quantization variance for a possibly fractional average bit-width q >= 0.
double quant_variance(double q, const QuantizerSpec& spec);

double kappa_bar(double ell, const FeatureProfile& profile);
double grad_energy(double ell, const FeatureProfile& profile);

/// A^-1(A(kappa_bar(l)) * exp(-sigma2 a(l) / 2)); never exceeds kappa_bar(l).
double kappa_distorted(double sigma2, double ell, const FeatureProfile& profile);

/**
 * MAP accuracy for J equally spaced vM classes with common concentration:
 * the integral over [0, pi/J] of exp(kappa cos x) / (pi I0(kappa)).
 *
 * Evaluated by Simpson refinement to relative change 1e-9. Once the result
 * passes 1/2 the complementary integral over [pi/J, pi] is used instead so
 * that 1 - P keeps full relative precision. Above kappa = 1e4 the erf
 * approximation is returned.
 */
double accuracy_of_kappa(double kappa, int J);

/// erf((pi/J) sqrt(kappa/2)) / erf(pi sqrt(kappa/2)); kappa > 0.
double accuracy_erf_approx(double kappa, int J);

/// Accuracy at quantization variance sigma2 and depth ell.
double accuracy_at_variance(double sigma2, double ell,
                            const FeatureProfile& profile);

/// Accuracy at bit-width q and depth ell.
double accuracy_model(double q, double ell, const FeatureProfile& profile,
                      const QuantizerSpec& spec);

/// Asymptotic zero-distortion error 1 - P(0, ell).
double error_scaling(double ell, const FeatureProfile& profile);

/**
 * Smallest depth in [1, L] whose accuracy at sigma2 reaches p0, to within
 * 1e-6 by bisection. std::nullopt when even depth L falls short.
 */
std::optional<double> min_depth_for_accuracy(double sigma2, double p0,
                                             const FeatureProfile& profile);

}  // namespace chadapt
