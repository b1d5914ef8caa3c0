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

#include <cstdint>
#include <optional>

#include "chadapt/accuracy.hpp"

namespace chadapt {

/// Channel and payload state for one coherence block. SI units, linear SNR.
struct LinkState {
  double bandwidth_hz = 1e8;
  double snr_linear = 1.0;
  double t_max_s = 0.012;
  std::uint64_t d = 1;  // features per transmitted vector

  void validate() const;

  /// Shannon rate B log2(1 + snr) in bits/s.
  double rate() const;
};

/// 10^(dB / 10).
double snr_from_db(double snr_db);

/// Device plus server computation time, b1 * ell + b2 seconds.
struct ComputeProfile {
  double b1 = 0.0;
  double b2 = 0.0;

  void validate() const;

  /// b2 = device_flops / device_speed, b1 = per_layer_flops / server_speed.
  static ComputeProfile from_flops(double device_flops, double per_layer_flops,
                                   double device_flops_per_s,
                                   double server_flops_per_s);
};

double comm_latency(double q, const LinkState& link);
double comp_latency(double ell, const ComputeProfile& comp);

/// Edge processing rate d q / (T_comm + T_comp); 0 when q = 0.
double epr(double q, double ell, const LinkState& link, const ComputeProfile& comp);

/// Largest q meeting the air-latency budget: T_max B log2(1 + snr) / d.
double max_bitwidth_continuous(const LinkState& link);

/**
 * Largest alphabet element whose transmission fits in T_max, i.e. the floor
 * of max_bitwidth_continuous within the alphabet. Evaluated through
 * comm_latency so the latency constraint holds exactly as checked elsewhere.
 * std::nullopt when no element fits.
 */
std::optional<int> max_bitwidth_discrete(const LinkState& link,
                                         const QuantizerSpec& spec);

}  // namespace chadapt
