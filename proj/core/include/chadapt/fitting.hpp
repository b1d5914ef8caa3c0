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

#include <utility>
#include <vector>

namespace chadapt {

struct DepthPoint {
  double ell = 0.0;
  double value = 0.0;
};

class DepthSeries {
 public:
  /// Throws std::invalid_argument on fewer than two points, repeated
  /// depths or non-finite entries.
  explicit DepthSeries(std::vector<DepthPoint> points);

  const std::vector<DepthPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<DepthPoint> points_;
};

struct AffineFit {
  double c1 = 0.0;  // slope
  double c2 = 0.0;  // intercept
  double rms = 0.0;
};

struct ExponentialFit {
  double c3 = 0.0;
  double c4 = 0.0;
  double rms_log = 0.0;   // residual RMS of ln(value)
  bool nonpositive_decay = false;  // c4 <= 0: not a decaying profile
};

/// Ordinary least squares on value = c1 * ell + c2.
AffineFit fit_affine(const DepthSeries& series);

/// Least squares on ln(value) = ln(c3) - c4 * ell. Values must be > 0.
ExponentialFit fit_exponential(const DepthSeries& series);

}  // namespace chadapt
