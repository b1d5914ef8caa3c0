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
#include <string>
#include <vector>

#include "chadapt/accuracy.hpp"
#include "chadapt/circstats.hpp"
#include "chadapt/optimizer.hpp"
#include "chadapt/system.hpp"

namespace chadapt {

// RNG stream layout for a given seed:
//   1..J          class-j draws in generate_dataset
//   kNoiseStream  angular noise in distort
//   task index    per-task draws in run_algorithm1 (seeded separately)
inline constexpr std::uint64_t kNoiseStream = std::uint64_t{1} << 40;

/// Labeled synthetic angular features at one depth.
struct AngularDataset {
  double depth = 1.0;
  AngularSampleSet samples;
  std::uint64_t seed = 0;
  bool distorted = false;
  double sigma2_effective = 0.0;  // sigma2 * a(depth) of the injected noise
};

/// n_per_class draws from vM(mu_j, kappa_bar(ell)) for every class j.
AngularDataset generate_dataset(const FeatureProfile& profile, double ell,
                                std::size_t n_per_class, std::uint64_t seed);

/**
 * Adds wrapped N(0, sigma2 * a(depth)) angular noise to every sample: the
 * first-order image of element-wise quantization noise of variance sigma2.
 * Throws std::logic_error if the dataset is already distorted.
 */
AngularDataset distort(const AngularDataset& dataset, double sigma2,
                       const FeatureProfile& profile, std::uint64_t seed);

/**
 * MAP class for equal priors and a shared concentration: the centroid
 * nearest in angular distance. Boundary ties go to the smaller index;
 * kappa = 0 makes every class tie, giving class 1.
 */
int classify_map(double theta, const FeatureProfile& profile, double kappa);

struct EmpiricalAccuracy {
  double accuracy = 0.0;
  double half_width = 0.0;  // Wald 95%: 1.96 sqrt(p (1 - p) / N)
  std::size_t correct = 0;
  std::size_t n = 0;
};

EmpiricalAccuracy empirical_accuracy(const AngularDataset& dataset,
                                     const FeatureProfile& profile,
                                     double kappa_for_decision);

struct TaskRecord {
  int true_class = 0;
  int predicted_class = 0;
  double q = 0.0;
  double ell = 0.0;
  double epr = 0.0;
  double t_comm = 0.0;
  double t_comp = 0.0;
  bool feasible = false;
};

struct Algorithm1Summary {
  std::size_t tasks = 0;
  double accuracy = 0.0;
  double ci_half_width = 0.0;
  double mean_epr = 0.0;
  double mean_t_comm = 0.0;
  double mean_t_comp = 0.0;
};

struct Algorithm1Result {
  std::vector<TaskRecord> records;
  Algorithm1Summary summary;
};

/**
 * Channel-adaptive inference over `tasks` tasks sharing one channel state.
 * Each task takes the solve_discrete plan, draws one feature of its class
 * (classes cycle 1..J), distorts it for the chosen bit-width and classifies
 * at the chosen depth. Infeasible plans are scored as uniform random guesses.
 */
Algorithm1Result run_algorithm1(std::size_t tasks, const LinkState& link,
                                const ComputeProfile& comp,
                                const FeatureProfile& profile,
                                const QuantizerSpec& spec, const ExitSet& exits,
                                double p0, std::uint64_t seed);

struct SweepScenario {
  LinkState link;  // snr_linear is overwritten per grid point
  ComputeProfile compute;
  FeatureProfile profile;
  QuantizerSpec quantizer;
  std::size_t tasks = 2000;
  std::uint64_t seed = 0;
};

struct SweepVariant {
  std::string name;
  ExitSet exits;
};

struct SweepRow {
  double snr_db = 0.0;
  std::string variant;
  double p0 = 0.0;
  double q = 0.0;
  double ell = 0.0;
  double pred_acc = 0.0;
  double emp_acc = 0.0;
  double emp_ci = 0.0;
  double epr = 0.0;
  double epr_cr = 0.0;
  bool feasible = false;
};

/// One row per (variant, p0, snr), sorted by variant name, then p0, then snr.
/// Every row reuses the scenario seed (common random numbers).
std::vector<SweepRow> sweep(std::span<const double> snr_grid_db,
                            const SweepScenario& scenario,
                            std::span<const SweepVariant> variants,
                            std::span<const double> p0_values);

}  // namespace chadapt
