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

#include "chadapt/fitting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chadapt {

namespace {

struct Line {
  double slope;
  double intercept;
  double rms;
};

// OLS of y on x, centered for conditioning.
Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit: all depths are identical");
  Line line{sxy / sxx, 0.0, 0.0};
  line.intercept = my - line.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (line.slope * x[i] + line.intercept);
    ss += r * r;
  }
  line.rms = std::sqrt(ss / n);
  return line;
}

}  // namespace

DepthSeries::DepthSeries(std::vector<DepthPoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("series: need at least 2 points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!std::isfinite(p.ell) || !std::isfinite(p.value)) {
      throw std::invalid_argument("series[" + std::to_string(i) + "]: non-finite entry");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (points_[k].ell == p.ell) {
        throw std::invalid_argument("series[" + std::to_string(i) + "]: repeated depth");
      }
    }
  }
}

AffineFit fit_affine(const DepthSeries& series) {
  std::vector<double> x, y;
  for (const auto& p : series.points()) {
    x.push_back(p.ell);
    y.push_back(p.value);
  }
  const Line line = least_squares(x, y);
  return {line.slope, line.intercept, line.rms};
}

ExponentialFit fit_exponential(const DepthSeries& series) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& p = series.points()[i];
    if (!(p.value > 0.0)) {
      throw std::invalid_argument("series[" + std::to_string(i) +
                                  "]: value must be > 0 for an exponential fit");
    }
    x.push_back(p.ell);
    y.push_back(std::log(p.value));
  }
  const Line line = least_squares(x, y);
  ExponentialFit fit;
  fit.c3 = std::exp(line.intercept);
  fit.c4 = line.slope == 0.0 ? 0.0 : -line.slope;
  fit.rms_log = line.rms;
  fit.nonpositive_decay = !(fit.c4 > 0.0);
  return fit;
}

}  // namespace chadapt
