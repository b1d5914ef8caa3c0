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
#include <stdexcept>
#include <string>
#include <utility>

#include "chadapt/accuracy.hpp"
#include "chadapt/optimizer.hpp"
#include "chadapt/system.hpp"

namespace chadapt::cli {

/// A rejected configuration. what() is "<field path>: <reason>".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& reason)
      : std::runtime_error(path + ": " + reason), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct MonteCarloSettings {
  std::size_t n_per_class = 20000;
  std::size_t tasks = 2000;
};

struct RunConfig {
  LinkState link;  // snr already converted to linear
  ComputeProfile compute;
  FeatureProfile profile;
  QuantizerSpec quantizer;
  ExitSet exits{std::vector<int>{1}};
  double target_accuracy = 0.0;
  std::uint64_t seed = 1;
  MonteCarloSettings monte_carlo;
};

/// Parses JSON text (comments allowed). Unknown keys are rejected.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

}  // namespace chadapt::cli
