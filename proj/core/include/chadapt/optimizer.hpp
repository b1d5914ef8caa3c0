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

#include <span>
#include <vector>

#include "chadapt/accuracy.hpp"
#include "chadapt/system.hpp"

namespace chadapt {

/// Depths at which an intermediate classifier is attached.
class ExitSet {
 public:
  /// Throws std::invalid_argument unless `layers` is nonempty, strictly
  /// increasing and >= 1.
  explicit ExitSet(std::vector<int> layers);

  /// Additionally checks every exit is <= L.
  void validate_against(const FeatureProfile& profile) const;

  const std::vector<int>& layers() const noexcept { return layers_; }
  int deepest() const noexcept { return layers_.back(); }

 private:
  std::vector<int> layers_;
};

/// An operating point (bit-width, depth) with its predicted performance.
struct Plan {
  double q = 0.0;
  double ell = 1.0;
  double predicted_accuracy = 0.0;
  double t_comm = 0.0;
  double t_comp = 0.0;
  double epr = 0.0;
  bool feasible = false;
};

/// Continuous relaxation: q* from the latency budget, depth by bisection.
Plan solve_cr(const LinkState& link, const ComputeProfile& comp,
              const FeatureProfile& profile, const QuantizerSpec& spec, double p0);

/**
 * Practical solver: q* is the alphabet floor of the latency-limited
 * bit-width, then the shallowest exit at least as deep as the continuous
 * minimum depth. When no exit reaches p0 the plan is infeasible, sits at the
 * deepest exit and reports zero EPR.
 */
Plan solve_discrete(const LinkState& link, const ComputeProfile& comp,
                    const FeatureProfile& profile, const QuantizerSpec& spec,
                    const ExitSet& exits, double p0);

/// Exhaustive search over alphabet x exits. Ties go to larger q, then
/// smaller depth. Same infeasible convention as solve_discrete.
Plan brute_force(const LinkState& link, const ComputeProfile& comp,
                 const FeatureProfile& profile, const QuantizerSpec& spec,
                 const ExitSet& exits, double p0);

}  // namespace chadapt
