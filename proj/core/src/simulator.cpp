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

#include "chadapt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace chadapt {

namespace {

constexpr double kTieTol = 1e-12;

double wald_half_width(double p, std::size_t n) {
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

AngularDataset generate_dataset(const FeatureProfile& profile, double ell,
                                std::size_t n_per_class, std::uint64_t seed) {
  profile.validate();
  if (n_per_class == 0) {
    throw std::invalid_argument("generate_dataset: n_per_class must be >= 1");
  }
  const double kappa = std::min(kappa_bar(ell, profile), kKappaMax);

  AngularDataset out;
  out.depth = ell;
  out.seed = seed;
  const std::size_t total = n_per_class * static_cast<std::size_t>(profile.J);
  out.samples.angles.reserve(total);
  out.samples.labels.reserve(total);
  for (int j = 1; j <= profile.J; ++j) {
    const VonMisesParams params(profile.centroid(j), kappa);
    const AngularSampleSet cls =
        vm_sample(params, n_per_class, seed, static_cast<std::uint64_t>(j));
    out.samples.angles.insert(out.samples.angles.end(), cls.angles.begin(),
                              cls.angles.end());
    out.samples.labels.insert(out.samples.labels.end(), n_per_class, j);
  }
  return out;
}

AngularDataset distort(const AngularDataset& dataset, double sigma2,
                       const FeatureProfile& profile, std::uint64_t seed) {
  if (dataset.distorted) {
    throw std::logic_error("distort: dataset is already distorted");
  }
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw std::domain_error("distort: variance must be finite and >= 0");
  }
  AngularDataset out = dataset;
  out.distorted = true;
  out.sigma2_effective = sigma2 * grad_energy(dataset.depth, profile);
  if (out.sigma2_effective == 0.0) return out;

  const double sd = std::sqrt(out.sigma2_effective);
  Philox4x32 rng(seed, kNoiseStream);
  for (double& theta : out.samples.angles) {
    theta = normalize_angle(theta + sd * standard_normal(rng));
  }
  return out;
}

int classify_map(double theta, const FeatureProfile& profile, double kappa) {
  if (!(kappa >= 0.0)) throw std::domain_error("classify_map: kappa must be >= 0");
  const double angle = normalize_angle(theta);
  if (kappa == 0.0) return 1;
  int best = 1;
  double best_distance = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= profile.J; ++j) {
    const double d = angular_distance(angle, profile.centroid(j));
    if (d < best_distance - kTieTol) {
      best = j;
      best_distance = d;
    }
  }
  return best;
}

EmpiricalAccuracy empirical_accuracy(const AngularDataset& dataset,
                                     const FeatureProfile& profile,
                                     double kappa_for_decision) {
  const auto& samples = dataset.samples;
  if (samples.size() == 0) throw std::invalid_argument("empirical_accuracy: empty dataset");
  if (!samples.labeled()) throw std::invalid_argument("empirical_accuracy: dataset is unlabeled");
  samples.validate();

  EmpiricalAccuracy out;
  out.n = samples.size();
  for (std::size_t i = 0; i < out.n; ++i) {
    if (classify_map(samples.angles[i], profile, kappa_for_decision) == samples.labels[i]) {
      ++out.correct;
    }
  }
  out.accuracy = static_cast<double>(out.correct) / static_cast<double>(out.n);
  out.half_width = wald_half_width(out.accuracy, out.n);
  return out;
}

Algorithm1Result run_algorithm1(std::size_t tasks, const LinkState& link,
                                const ComputeProfile& comp,
                                const FeatureProfile& profile,
                                const QuantizerSpec& spec, const ExitSet& exits,
                                double p0, std::uint64_t seed) {
  if (tasks == 0) throw std::invalid_argument("run_algorithm1: tasks must be >= 1");

  // The channel state is shared by every task, so each task's solve is the same.
  const Plan plan = solve_discrete(link, comp, profile, spec, exits, p0);
  const double sigma2 = quant_variance(plan.q, spec);
  const double kappa_clean = std::min(kappa_bar(plan.ell, profile), kKappaMax);
  const double noise_sd = std::sqrt(sigma2 * grad_energy(plan.ell, profile));
  const double kappa_decision = kappa_distorted(sigma2, plan.ell, profile);

  Algorithm1Result result;
  result.records.reserve(tasks);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < tasks; ++i) {
    Philox4x32 rng(seed, i);
    TaskRecord rec;
    rec.true_class = static_cast<int>(i % static_cast<std::size_t>(profile.J)) + 1;
    rec.q = plan.q;
    rec.ell = plan.ell;
    rec.epr = plan.epr;
    rec.t_comm = plan.t_comm;
    rec.t_comp = plan.t_comp;
    rec.feasible = plan.feasible;
    if (plan.feasible) {
      const VonMisesParams params(profile.centroid(rec.true_class), kappa_clean);
      double theta = draw_von_mises(rng, params);
      if (noise_sd > 0.0) theta = normalize_angle(theta + noise_sd * standard_normal(rng));
      rec.predicted_class = classify_map(theta, profile, kappa_decision);
    } else {
      const auto guess = static_cast<int>(uniform_open01(rng) * profile.J);
      rec.predicted_class = std::min(guess, profile.J - 1) + 1;
    }
    if (rec.predicted_class == rec.true_class) ++correct;
    result.records.push_back(rec);
  }

  auto& s = result.summary;
  const double n = static_cast<double>(tasks);
  s.tasks = tasks;
  s.accuracy = static_cast<double>(correct) / n;
  s.ci_half_width = wald_half_width(s.accuracy, tasks);
  for (const auto& rec : result.records) {
    s.mean_epr += rec.epr;
    s.mean_t_comm += rec.t_comm;
    s.mean_t_comp += rec.t_comp;
  }
  s.mean_epr /= n;
  s.mean_t_comm /= n;
  s.mean_t_comp /= n;
  return result;
}

std::vector<SweepRow> sweep(std::span<const double> snr_grid_db,
                            const SweepScenario& scenario,
                            std::span<const SweepVariant> variants,
                            std::span<const double> p0_values) {
  if (snr_grid_db.empty()) throw std::invalid_argument("sweep: empty SNR grid");
  if (variants.empty()) throw std::invalid_argument("sweep: no exit-set variants");
  if (p0_values.empty()) throw std::invalid_argument("sweep: no target accuracies");

  std::vector<double> snrs(snr_grid_db.begin(), snr_grid_db.end());
  std::vector<double> p0s(p0_values.begin(), p0_values.end());
  std::sort(snrs.begin(), snrs.end());
  std::sort(p0s.begin(), p0s.end());
  std::vector<const SweepVariant*> order;
  for (const auto& v : variants) order.push_back(&v);
  std::stable_sort(order.begin(), order.end(),
                   [](const SweepVariant* a, const SweepVariant* b) { return a->name < b->name; });

  std::vector<SweepRow> rows;
  rows.reserve(variants.size() * p0s.size() * snrs.size());
  for (const SweepVariant* v : order) {
    const SweepVariant& variant = *v;
    for (double p0 : p0s) {
      for (double snr_db : snrs) {
        LinkState link = scenario.link;
        link.snr_linear = snr_from_db(snr_db);
        const Plan cr = solve_cr(link, scenario.compute, scenario.profile,
                                 scenario.quantizer, p0);
        const Plan plan = solve_discrete(link, scenario.compute, scenario.profile,
                                         scenario.quantizer, variant.exits, p0);
        const auto sim = run_algorithm1(scenario.tasks, link, scenario.compute,
                                        scenario.profile, scenario.quantizer,
                                        variant.exits, p0, scenario.seed);
        SweepRow row;
        row.snr_db = snr_db;
        row.variant = variant.name;
        row.p0 = p0;
        row.q = plan.q;
        row.ell = plan.ell;
        row.pred_acc = plan.predicted_accuracy;
        row.emp_acc = sim.summary.accuracy;
        row.emp_ci = sim.summary.ci_half_width;
        row.epr = plan.epr;
        row.epr_cr = cr.epr;
        row.feasible = plan.feasible;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace chadapt
