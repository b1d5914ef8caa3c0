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

#include "chadapt/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

#include "chadapt/circstats.hpp"

namespace chadapt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadratureRtol = 1e-9;
constexpr std::size_t kMinIntervals = 16;
constexpr std::size_t kMaxIntervals = std::size_t{1} << 20;
constexpr double kErfSwitchKappa = 1e4;
constexpr double kDepthTol = 1e-6;

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Composite Simpson, doubling the interval count (reusing prior nodes) until
// the relative change drops below kQuadratureRtol.
template <typename F>
double refine_simpson(F&& f, double a, double b) {
  std::size_t n = 2;
  double h = 0.5 * (b - a);
  const double ends = f(a) + f(b);
  double odd = f(a + h);
  double even = 0.0;
  double s = h / 3.0 * (ends + 4.0 * odd);
  for (;;) {
    n *= 2;
    h *= 0.5;
    even += odd;
    odd = 0.0;
    for (std::size_t i = 1; i < n; i += 2) odd += f(a + static_cast<double>(i) * h);
    const double next = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    const bool converged = std::abs(next - s) <= kQuadratureRtol * std::abs(next);
    s = next;
    if ((n >= kMinIntervals && converged) || n >= kMaxIntervals) return s;
  }
}

void require_depth(double ell, const FeatureProfile& profile, const char* what) {
  if (!(ell >= 1.0 && ell <= static_cast<double>(profile.L))) {
    throw std::domain_error(std::string(what) + ": depth " + std::to_string(ell) +
                            " outside [1, " + std::to_string(profile.L) + "]");
  }
}

}  // namespace

void FeatureProfile::validate() const {
  if (J < 2) fail("feature_profile.J: must be >= 2");
  if (L < 1) fail("feature_profile.L: must be >= 1");
  if (!(c1 > 0.0) || !std::isfinite(c1)) fail("feature_profile.c1: must be > 0");
  if (!std::isfinite(c2)) fail("feature_profile.c2: must be finite");
  if (!(c1 + c2 > 0.0)) {
    fail("feature_profile.c2: kappa_bar(1) = c1 + c2 must be > 0");
  }
  if (!(c3 > 0.0) || !std::isfinite(c3)) fail("feature_profile.c3: must be > 0");
  // c4 = 0 is the flat-gradient limit; negative would make a(l) grow.
  if (!(c4 >= 0.0) || !std::isfinite(c4)) fail("feature_profile.c4: must be >= 0");
}

double FeatureProfile::centroid(int j) const {
  if (j < 1 || j > J) fail("FeatureProfile::centroid: class index out of range");
  return -kPi + (2.0 * j - 1.0) * kPi / J;
}

void QuantizerSpec::validate() const {
  if (!std::isfinite(c_min)) fail("quantizer.c_min: must be finite");
  if (!std::isfinite(c_max)) fail("quantizer.c_max: must be finite");
  if (!(c_max > c_min)) fail("quantizer.c_max: must exceed c_min");
  if (q_max < 0) fail("quantizer.q_max: must be >= 0");
  if (bit_alphabet.empty()) fail("quantizer.bit_alphabet: must be nonempty");
  for (std::size_t i = 0; i < bit_alphabet.size(); ++i) {
    const int q = bit_alphabet[i];
    if (q < 0 || q > q_max) {
      fail("quantizer.bit_alphabet[" + std::to_string(i) + "]: " +
           std::to_string(q) + " outside [0, q_max]");
    }
    if (i > 0 && q <= bit_alphabet[i - 1]) {
      fail("quantizer.bit_alphabet[" + std::to_string(i) +
           "]: must be strictly increasing");
    }
  }
}

QuantizerSpec QuantizerSpec::full_alphabet(double c_min, double c_max, int q_max) {
  QuantizerSpec spec{c_min, c_max, q_max, {}};
  for (int q = 0; q <= q_max; ++q) spec.bit_alphabet.push_back(q);
  return spec;
}

double uniform_quant_variance(int bits, const QuantizerSpec& spec) {
  if (bits < 0) throw std::domain_error("uniform_quant_variance: bits must be >= 0");
  const double r = spec.range();
  return std::ldexp(r * r / 12.0, -2 * bits);
}

double mixed_quant_variance(int q0, double alpha, const QuantizerSpec& spec) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("mixed_quant_variance: alpha must lie in [0, 1]");
  }
  return (1.0 + 3.0 * alpha) / 4.0 * uniform_quant_variance(q0, spec);
}

double quant_variance(double q, const QuantizerSpec& spec) {
  if (!(q >= 0.0) || !std::isfinite(q)) {
    throw std::domain_error("quant_variance: bit-width must be finite and >= 0");
  }
  if (q >= 1e4) return 0.0;
  const double q0 = std::floor(q);
  const int bits = static_cast<int>(q0);
  if (q == q0) return uniform_quant_variance(bits, spec);
  return mixed_quant_variance(bits, 1.0 - (q - q0), spec);
}

double kappa_bar(double ell, const FeatureProfile& profile) {
  require_depth(ell, profile, "kappa_bar");
  return profile.c1 * ell + profile.c2;
}

double grad_energy(double ell, const FeatureProfile& profile) {
  require_depth(ell, profile, "grad_energy");
  return profile.c3 * std::exp(-profile.c4 * ell);
}

double kappa_distorted(double sigma2, double ell, const FeatureProfile& profile) {
  if (!(sigma2 >= 0.0)) {
    throw std::domain_error("kappa_distorted: variance must be >= 0");
  }
  const double kb = kappa_bar(ell, profile);
  // A(rho) is exp(-sigma2 a / 2) by construction, so rho itself is not needed.
  const double shrink = std::exp(-0.5 * sigma2 * grad_energy(ell, profile));
  if (shrink == 1.0) return kb;
  const double r = bessel_ratio(std::min(kb, kKappaMax)) * shrink;
  return std::min(bessel_ratio_inv(r).kappa, kb);
}

double accuracy_erf_approx(double kappa, int J) {
  if (J < 2) throw std::invalid_argument("accuracy_erf_approx: J must be >= 2");
  if (!(kappa > 0.0)) throw std::domain_error("accuracy_erf_approx: kappa must be > 0");
  const double root = std::sqrt(0.5 * kappa);
  return std::erf(kPi / J * root) / std::erf(kPi * root);
}

double accuracy_of_kappa(double kappa, int J) {
  if (J < 2) throw std::invalid_argument("accuracy_of_kappa: J must be >= 2");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw std::domain_error("accuracy_of_kappa: kappa must be finite and >= 0");
  }
  if (kappa == 0.0) return 1.0 / J;
  if (kappa > kErfSwitchKappa) return accuracy_erf_approx(kappa, J);

  const double norm = kPi * bessel_i0_scaled(kappa);
  auto density = [kappa, norm](double x) {
    return std::exp(kappa * (std::cos(x) - 1.0)) / norm;
  };
  const double edge = kPi / J;
  const double hit = refine_simpson(density, 0.0, edge);
  if (hit <= 0.5) return hit;
  return 1.0 - refine_simpson(density, edge, kPi);
}

double accuracy_at_variance(double sigma2, double ell,
                            const FeatureProfile& profile) {
  return accuracy_of_kappa(kappa_distorted(sigma2, ell, profile), profile.J);
}

double accuracy_model(double q, double ell, const FeatureProfile& profile,
                      const QuantizerSpec& spec) {
  return accuracy_at_variance(quant_variance(q, spec), ell, profile);
}

double error_scaling(double ell, const FeatureProfile& profile) {
  const double kappa = kappa_bar(ell, profile);
  const double J = profile.J;
  return std::sqrt(2.0) * J / (std::pow(kPi, 1.5) * std::sqrt(kappa)) *
         std::exp(-kPi * kPi / (2.0 * J * J) * kappa);
}

std::optional<double> min_depth_for_accuracy(double sigma2, double p0,
                                             const FeatureProfile& profile) {
  if (!(p0 > 1.0 / profile.J && p0 < 1.0)) {
    throw std::invalid_argument("min_depth_for_accuracy: p0 must lie in (1/J, 1)");
  }
  double lo = 1.0;
  double hi = static_cast<double>(profile.L);
  if (accuracy_at_variance(sigma2, lo, profile) >= p0) return lo;
  if (accuracy_at_variance(sigma2, hi, profile) < p0) return std::nullopt;
  // invariant: P(lo) < p0 <= P(hi)
  while (hi - lo > kDepthTol) {
    const double mid = 0.5 * (lo + hi);
    if (accuracy_at_variance(sigma2, mid, profile) >= p0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace chadapt
