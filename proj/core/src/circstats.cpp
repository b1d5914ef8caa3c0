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

#include "chadapt/circstats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chadapt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSeriesLimit = 15.0;

void require_nonneg_finite(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(what) +
                            ": argument must be finite and >= 0");
  }
}

// I0(x) = sum_k (x^2/4)^k / (k!)^2
double series_i0(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// I1(x) = (x/2) sum_k (x^2/4)^k / (k! (k+1)!)
double series_i1(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 0.5 * x * sum;
}

// e^(-x) I_nu(x) ~ (2 pi x)^(-1/2) sum_k prod_{m<=k} ((2m-1)^2 - 4 nu^2) / (8 m x)
// truncated at the smallest term.
double asymptotic_scaled(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (odd * odd - mu) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(kTwoPi * x);
}

// A^-1 without the domain check; r >= A(kKappaMax) saturates.
Concentration invert_ratio(double r) {
  if (r <= 0.0) return {0.0, false};
  static const double r_cap = bessel_ratio(kKappaMax);
  if (r >= r_cap) return {kKappaMax, true};

  double lo = 0.0;
  double hi = kKappaMax;
  double k = r * (2.0 - r * r) / (1.0 - r * r);
  if (!(k > lo && k < hi)) k = 0.5 * (lo + hi);

  for (int it = 0; it < 200; ++it) {
    const double a = bessel_ratio(k);
    const double f = a - r;
    if (f == 0.0) return {k, false};
    if (f > 0.0) {
      hi = k;
    } else {
      lo = k;
    }
    // A'(k) = 1 - A/k - A^2
    const double slope = 1.0 - a / k - a * a;
    double next = k - f / slope;
    if (!(slope > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - k) <= 1e-13 * next) return {next, false};
    k = next;
  }
  return {k, false};
}

}  // namespace

VonMisesParams::VonMisesParams(double mu, double kappa)
    : mu_(normalize_angle(mu)), kappa_(kappa) {
  require_nonneg_finite(kappa, "VonMisesParams kappa");
}

void AngularSampleSet::validate() const {
  if (!labels.empty() && labels.size() != angles.size()) {
    throw std::invalid_argument("AngularSampleSet: labels/angles length mismatch");
  }
  for (double a : angles) {
    if (!(a > -kPi && a <= kPi)) {
      throw std::invalid_argument("AngularSampleSet: angle outside (-pi, pi]");
    }
  }
}

double bessel_i0_scaled(double x) {
  require_nonneg_finite(x, "bessel_i0_scaled");
  if (x < kSeriesLimit) return series_i0(x) * std::exp(-x);
  return asymptotic_scaled(0, x);
}

double bessel_i1_scaled(double x) {
  require_nonneg_finite(x, "bessel_i1_scaled");
  if (x < kSeriesLimit) return series_i1(x) * std::exp(-x);
  return asymptotic_scaled(1, x);
}

double bessel_ratio(double kappa) {
  require_nonneg_finite(kappa, "bessel_ratio");
  if (kappa == 0.0) return 0.0;
  if (kappa < kSeriesLimit) return series_i1(kappa) / series_i0(kappa);
  return asymptotic_scaled(1, kappa) / asymptotic_scaled(0, kappa);
}

Concentration bessel_ratio_inv(double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw std::domain_error("bessel_ratio_inv: argument must lie in [0, 1)");
  }
  return invert_ratio(r);
}

double normalize_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::domain_error("normalize_angle: non-finite angle");
  }
  double r = std::remainder(theta, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r = kPi;
  return r;
}

double angular_distance(double b1, double b2) {
  const double d = std::abs(normalize_angle(b1) - normalize_angle(b2));
  return std::min(d, kTwoPi - d);
}

double vm_pdf(double theta, const VonMisesParams& params) {
  const double kappa = params.kappa();
  if (kappa == 0.0) return 1.0 / kTwoPi;
  const double c = std::cos(theta - params.mu());
  return std::exp(kappa * (c - 1.0)) / (kTwoPi * bessel_i0_scaled(kappa));
}

double draw_von_mises(Philox4x32& rng, const VonMisesParams& params) {
  const double kappa = std::min(params.kappa(), kKappaMax);
  if (kappa < 1e-8) {
    return normalize_angle(-kPi + kTwoPi * uniform_open01(rng));
  }

  // Best & Fisher (1979) wrapped-Cauchy envelope.
  double s;
  if (kappa < 1e-5) {
    s = 1.0 / kappa + kappa;
  } else {
    const double r = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (r - std::sqrt(2.0 * r)) / (2.0 * kappa);
    s = (1.0 + rho * rho) / (2.0 * rho);
  }

  double w;
  for (;;) {
    const double z = std::cos(kPi * uniform_open01(rng));
    w = (1.0 + s * z) / (s + z);
    const double y = kappa * (s - w);
    const double v = uniform_open01(rng);
    if (y * (2.0 - y) - v >= 0.0) break;
    if (std::log(y / v) + 1.0 - y >= 0.0) break;
  }
  double theta = std::acos(std::clamp(w, -1.0, 1.0));
  if (uniform_open01(rng) < 0.5) theta = -theta;
  return normalize_angle(params.mu() + theta);
}

AngularSampleSet vm_sample(const VonMisesParams& params, std::size_t n,
                           std::uint64_t seed, std::uint64_t stream) {
  if (n == 0) throw std::invalid_argument("vm_sample: n must be >= 1");
  Philox4x32 rng(seed, stream);
  AngularSampleSet out;
  out.angles.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.angles.push_back(draw_von_mises(rng, params));
  }
  return out;
}

Concentration estimate_kappa(std::span<const double> angles) {
  if (angles.size() < 2) {
    throw std::invalid_argument("estimate_kappa: need at least 2 samples");
  }
  double sum_cos = 0.0;
  double sum_sin = 0.0;
  for (double theta : angles) {
    sum_cos += std::cos(theta);
    sum_sin += std::sin(theta);
  }
  const double r_bar =
      std::hypot(sum_cos, sum_sin) / static_cast<double>(angles.size());
  if (r_bar >= 1.0 - 1e-12) return {kKappaMax, true};
  return invert_ratio(r_bar);
}

Concentration estimate_kappa_pooled(const AngularSampleSet& samples, int J) {
  if (J < 1) throw std::invalid_argument("estimate_kappa_pooled: J must be >= 1");
  if (!samples.labeled()) {
    throw std::invalid_argument("estimate_kappa_pooled: samples carry no labels");
  }
  samples.validate();

  std::vector<std::vector<double>> by_class(static_cast<std::size_t>(J));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int label = samples.labels[i];
    if (label < 1 || label > J) {
      throw std::invalid_argument("estimate_kappa_pooled: label " +
                                  std::to_string(label) + " outside 1.." +
                                  std::to_string(J));
    }
    by_class[static_cast<std::size_t>(label - 1)].push_back(samples.angles[i]);
  }

  Concentration pooled;
  for (int j = 0; j < J; ++j) {
    const auto& cls = by_class[static_cast<std::size_t>(j)];
    if (cls.size() < 2) {
      throw std::invalid_argument("estimate_kappa_pooled: class " +
                                  std::to_string(j + 1) +
                                  " has fewer than 2 samples");
    }
    const Concentration c = estimate_kappa(cls);
    pooled.kappa += c.kappa;
    pooled.saturated = pooled.saturated || c.saturated;
  }
  pooled.kappa /= J;
  return pooled;
}

Concentration wrapped_gaussian_kappa(double sigma2) {
  if (!(sigma2 >= 0.0)) {
    throw std::domain_error("wrapped_gaussian_kappa: variance must be >= 0");
  }
  const double r = std::exp(-0.5 * sigma2);
  if (r >= 1.0) return {kKappaMax, true};
  return invert_ratio(r);
}

}  // namespace chadapt
