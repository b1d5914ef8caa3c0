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

#include "chadapt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace chadapt {

namespace {

// Bisection tolerance of min_depth_for_accuracy; exits this close below the
// continuous depth are re-evaluated instead of being skipped.
constexpr double kDepthSlack = 1e-6;
constexpr double kTieRtol = 1e-12;

void check_inputs(const LinkState& link, const ComputeProfile& comp,
                  const FeatureProfile& profile, const QuantizerSpec& spec,
                  double p0) {
  link.validate();
  comp.validate();
  profile.validate();
  spec.validate();
  if (!(p0 > 1.0 / profile.J && p0 < 1.0)) {
    throw std::invalid_argument("target accuracy must lie in (1/J, 1), got " +
                                std::to_string(p0));
  }
}

Plan assemble(double q, double ell, double accuracy, bool feasible,
              const LinkState& link, const ComputeProfile& comp) {
  Plan plan;
  plan.q = q;
  plan.ell = ell;
  plan.predicted_accuracy = accuracy;
  plan.t_comm = comm_latency(q, link);
  plan.t_comp = comp_latency(ell, comp);
  plan.feasible = feasible;
  plan.epr = feasible ? epr(q, ell, link, comp) : 0.0;
  return plan;
}

// Nothing in the alphabet fits the air-latency budget.
Plan silent_plan(const ExitSet& exits, const FeatureProfile& profile,
                 const ComputeProfile& comp) {
  Plan plan;
  plan.ell = exits.deepest();
  plan.predicted_accuracy = 1.0 / profile.J;
  plan.t_comp = comp_latency(plan.ell, comp);
  return plan;
}

}  // namespace

ExitSet::ExitSet(std::vector<int> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("exits: must be nonempty");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i] < 1) {
      throw std::invalid_argument("exits[" + std::to_string(i) + "]: must be >= 1");
    }
    if (i > 0 && layers_[i] <= layers_[i - 1]) {
      throw std::invalid_argument("exits[" + std::to_string(i) +
                                  "]: must be strictly increasing");
    }
  }
}

void ExitSet::validate_against(const FeatureProfile& profile) const {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i] > profile.L) {
      throw std::invalid_argument("exits[" + std::to_string(i) + "]: " +
                                  std::to_string(layers_[i]) + " exceeds L = " +
                                  std::to_string(profile.L));
    }
  }
}

Plan solve_cr(const LinkState& link, const ComputeProfile& comp,
              const FeatureProfile& profile, const QuantizerSpec& spec, double p0) {
  check_inputs(link, comp, profile, spec, p0);
  const double q = max_bitwidth_continuous(link);
  const double sigma2 = quant_variance(q, spec);
  if (const auto depth = min_depth_for_accuracy(sigma2, p0, profile)) {
    return assemble(q, *depth, accuracy_at_variance(sigma2, *depth, profile), true,
                    link, comp);
  }
  const double deepest = profile.L;
  return assemble(q, deepest, accuracy_at_variance(sigma2, deepest, profile), false,
                  link, comp);
}

Plan solve_discrete(const LinkState& link, const ComputeProfile& comp,
                    const FeatureProfile& profile, const QuantizerSpec& spec,
                    const ExitSet& exits, double p0) {
  check_inputs(link, comp, profile, spec, p0);
  exits.validate_against(profile);

  const auto bits = max_bitwidth_discrete(link, spec);
  if (!bits) return silent_plan(exits, profile, comp);
  const double q = *bits;
  const double sigma2 = quant_variance(q, spec);

  if (const auto depth = min_depth_for_accuracy(sigma2, p0, profile)) {
    const auto& layers = exits.layers();
    auto it = std::lower_bound(layers.begin(), layers.end(), *depth - kDepthSlack,
                               [](int layer, double x) { return layer < x; });
    for (; it != layers.end(); ++it) {
      const double accuracy = accuracy_at_variance(sigma2, *it, profile);
      if (accuracy >= p0) return assemble(q, *it, accuracy, true, link, comp);
    }
  }
  const double deepest = exits.deepest();
  return assemble(q, deepest, accuracy_at_variance(sigma2, deepest, profile), false,
                  link, comp);
}

Plan brute_force(const LinkState& link, const ComputeProfile& comp,
                 const FeatureProfile& profile, const QuantizerSpec& spec,
                 const ExitSet& exits, double p0) {
  check_inputs(link, comp, profile, spec, p0);
  exits.validate_against(profile);

  std::optional<Plan> best;
  std::optional<int> widest;  // largest bit-width meeting the latency budget
  for (int q : spec.bit_alphabet) {
    if (comm_latency(q, link) > link.t_max_s) continue;
    widest = q;
    const double sigma2 = quant_variance(q, spec);
    for (int ell : exits.layers()) {
      const double accuracy = accuracy_at_variance(sigma2, ell, profile);
      if (accuracy < p0) continue;
      Plan candidate = assemble(q, ell, accuracy, true, link, comp);
      if (!best) {
        best = candidate;
        continue;
      }
      const double scale = std::max(std::abs(candidate.epr), std::abs(best->epr));
      const bool tie = std::abs(candidate.epr - best->epr) <= kTieRtol * scale;
      // Iteration runs q ascending then ell ascending, so on a tie only a
      // strictly larger q may displace the incumbent.
      if ((!tie && candidate.epr > best->epr) || (tie && candidate.q > best->q)) {
        best = candidate;
      }
    }
  }
  if (best) return *best;
  if (!widest) return silent_plan(exits, profile, comp);

  const double q = *widest;
  const double deepest = exits.deepest();
  return assemble(q, deepest,
                  accuracy_at_variance(quant_variance(q, spec), deepest, profile),
                  false, link, comp);
}

}  // namespace chadapt
