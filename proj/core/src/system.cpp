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

#include "chadapt/system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chadapt {

namespace {

void require_positive(double x, const char* field) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(field) + ": must be positive and finite");
  }
}

void require_nonneg(double x, const char* field) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(field) + ": must be >= 0 and finite");
  }
}

}  // namespace

void LinkState::validate() const {
  require_positive(bandwidth_hz, "link.bandwidth_hz");
  require_positive(snr_linear, "link.snr");
  require_positive(t_max_s, "link.t_max_s");
  if (d == 0) throw std::invalid_argument("link.d: must be a positive integer");
}

double LinkState::rate() const { return bandwidth_hz * std::log2(1.0 + snr_linear); }

double snr_from_db(double snr_db) {
  if (!std::isfinite(snr_db)) throw std::domain_error("snr_from_db: non-finite dB value");
  return std::pow(10.0, snr_db / 10.0);
}

void ComputeProfile::validate() const {
  require_nonneg(b1, "compute.b1_s");
  require_nonneg(b2, "compute.b2_s");
}

ComputeProfile ComputeProfile::from_flops(double device_flops, double per_layer_flops,
                                          double device_flops_per_s,
                                          double server_flops_per_s) {
  require_nonneg(device_flops, "compute.flops.device_flops");
  require_nonneg(per_layer_flops, "compute.flops.per_layer_flops");
  require_positive(device_flops_per_s, "compute.flops.device_flops_per_s");
  require_positive(server_flops_per_s, "compute.flops.server_flops_per_s");
  return {per_layer_flops / server_flops_per_s, device_flops / device_flops_per_s};
}

double comm_latency(double q, const LinkState& link) {
  if (!(q >= 0.0)) throw std::domain_error("comm_latency: bit-width must be >= 0");
  if (q == 0.0) return 0.0;
  return static_cast<double>(link.d) * q / link.rate();
}

double comp_latency(double ell, const ComputeProfile& comp) {
  if (!(ell >= 1.0)) throw std::domain_error("comp_latency: depth must be >= 1");
  return comp.b1 * ell + comp.b2;
}

double epr(double q, double ell, const LinkState& link, const ComputeProfile& comp) {
  const double t_comp = comp_latency(ell, comp);
  if (q == 0.0) return 0.0;
  const double t_comm = comm_latency(q, link);
  return static_cast<double>(link.d) * q / (t_comm + t_comp);
}

double max_bitwidth_continuous(const LinkState& link) {
  return link.t_max_s * link.rate() / static_cast<double>(link.d);
}

std::optional<int> max_bitwidth_discrete(const LinkState& link,
                                         const QuantizerSpec& spec) {
  if (spec.bit_alphabet.empty()) {
    throw std::invalid_argument("max_bitwidth_discrete: empty bit alphabet");
  }
  for (auto it = spec.bit_alphabet.rbegin(); it != spec.bit_alphabet.rend(); ++it) {
    if (comm_latency(*it, link) <= link.t_max_s) return *it;
  }
  return std::nullopt;
}

}  // namespace chadapt
