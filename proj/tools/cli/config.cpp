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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace chadapt::cli {

namespace {

using nlohmann::json;

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

// Typed, path-aware access to one JSON object.
class Section {
 public:
  Section(const json& node, std::string path, std::initializer_list<const char*> keys)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(label(), "expected an object");
    for (const auto& [key, value] : node_.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) throw ConfigError(join(path_, key), "unknown key");
    }
  }

  bool has(const char* key) const { return node_.contains(key); }
  std::string path(const char* key) const { return join(path_, key); }

  const json& at(const char* key) const {
    if (!has(key)) throw ConfigError(path(key), "missing required field");
    return node_.at(key);
  }

  double number(const char* key) const { return as_number(at(key), path(key)); }

  std::optional<double> opt_number(const char* key) const {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::int64_t integer(const char* key) const { return as_integer(at(key), path(key)); }

  std::uint64_t unsigned_integer(const char* key) const {
    const json& v = at(key);
    if (!v.is_number_unsigned()) {
      throw ConfigError(path(key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::vector<int> int_list(const char* key) const {
    const json& v = at(key);
    if (!v.is_array()) throw ConfigError(path(key), "expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::int64_t x = as_integer(v[i], index_path(path(key), i));
      if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        throw ConfigError(index_path(path(key), i), "integer out of range");
      }
      out.push_back(static_cast<int>(x));
    }
    return out;
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
    return x;
  }

  static std::int64_t as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    return v.get<std::int64_t>();
  }

 private:
  std::string label() const { return path_.empty() ? "<root>" : path_; }

  const json& node_;
  std::string path_;
};

int narrow_int(std::int64_t x, const std::string& path) {
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ConfigError(path, "integer out of range");
  }
  return static_cast<int>(x);
}

// Runs a library validator and re-tags its message as a ConfigError. Library
// messages already start with the field path.
template <typename F>
void revalidate(F&& check, const std::string& fallback_path) {
  try {
    check();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    if (colon == std::string::npos) throw ConfigError(fallback_path, msg);
    throw ConfigError(msg.substr(0, colon), msg.substr(colon + 2));
  }
}

LinkState read_link(const json& root) {
  const Section s(root, "link", {"bandwidth_hz", "snr_db", "snr_linear", "t_max_s", "d"});
  LinkState link;
  link.bandwidth_hz = s.number("bandwidth_hz");
  const auto db = s.opt_number("snr_db");
  const auto linear = s.opt_number("snr_linear");
  if (db.has_value() == linear.has_value()) {
    throw ConfigError("link", "exactly one of snr_db, snr_linear is required");
  }
  // The only dB-to-linear conversion in the program.
  link.snr_linear = db ? snr_from_db(*db) : *linear;
  link.t_max_s = s.number("t_max_s");
  link.d = s.unsigned_integer("d");

  if (!(link.bandwidth_hz > 0.0)) throw ConfigError(s.path("bandwidth_hz"), "must be > 0");
  if (!(link.snr_linear > 0.0)) {
    throw ConfigError(s.path(db ? "snr_db" : "snr_linear"),
                      db ? "linear SNR underflows to 0" : "must be > 0");
  }
  if (!(link.t_max_s > 0.0)) throw ConfigError(s.path("t_max_s"), "must be > 0");
  if (link.d == 0) throw ConfigError(s.path("d"), "must be >= 1");
  return link;
}

ComputeProfile read_compute(const json& root) {
  const Section s(root, "compute", {"b1_s", "b2_s", "flops"});
  const bool affine = s.has("b1_s") || s.has("b2_s");
  if (affine == s.has("flops")) {
    throw ConfigError("compute", "exactly one of {b1_s, b2_s} or flops is required");
  }
  ComputeProfile comp;
  if (affine) {
    comp.b1 = s.number("b1_s");
    comp.b2 = s.number("b2_s");
  } else {
    const Section f(s.at("flops"), "compute.flops",
                    {"device_flops", "per_layer_flops", "device_flops_per_s",
                     "server_flops_per_s"});
    const double device = f.number("device_flops");
    const double per_layer = f.number("per_layer_flops");
    const double device_speed = f.number("device_flops_per_s");
    const double server_speed = f.number("server_flops_per_s");
    revalidate([&] {
      comp = ComputeProfile::from_flops(device, per_layer, device_speed, server_speed);
    }, "compute.flops");
  }
  revalidate([&] { comp.validate(); }, "compute");
  return comp;
}

FeatureProfile read_profile(const json& root) {
  const Section s(root, "feature_profile", {"J", "c1", "c2", "c3", "c4", "L"});
  FeatureProfile p;
  p.J = narrow_int(s.integer("J"), s.path("J"));
  p.c1 = s.number("c1");
  p.c2 = s.number("c2");
  p.c3 = s.number("c3");
  p.c4 = s.number("c4");
  p.L = narrow_int(s.integer("L"), s.path("L"));
  revalidate([&] { p.validate(); }, "feature_profile");
  return p;
}

QuantizerSpec read_quantizer(const json& root) {
  const Section s(root, "quantizer", {"c_min", "c_max", "q_max", "bit_alphabet"});
  QuantizerSpec q;
  q.c_min = s.number("c_min");
  q.c_max = s.number("c_max");
  q.q_max = narrow_int(s.integer("q_max"), s.path("q_max"));
  if (s.has("bit_alphabet")) {
    q.bit_alphabet = s.int_list("bit_alphabet");
  } else {
    if (q.q_max > 4096) throw ConfigError(s.path("q_max"), "too large for the default alphabet");
    for (int bits = 0; bits <= q.q_max; ++bits) q.bit_alphabet.push_back(bits);
  }
  revalidate([&] { q.validate(); }, "quantizer");
  return q;
}

MonteCarloSettings read_monte_carlo(const json& root) {
  const Section s(root, "monte_carlo", {"n_per_class", "tasks"});
  MonteCarloSettings mc;
  if (s.has("n_per_class")) mc.n_per_class = s.unsigned_integer("n_per_class");
  if (s.has("tasks")) mc.tasks = s.unsigned_integer("tasks");
  if (mc.n_per_class == 0) throw ConfigError(s.path("n_per_class"), "must be >= 1");
  if (mc.tasks == 0) throw ConfigError(s.path("tasks"), "must be >= 1");
  return mc;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  const Section top(root, "",
                    {"link", "compute", "feature_profile", "quantizer", "exits",
                     "target_accuracy", "seed", "monte_carlo"});

  RunConfig cfg;
  cfg.link = read_link(top.at("link"));
  cfg.compute = read_compute(top.at("compute"));
  cfg.profile = read_profile(top.at("feature_profile"));
  cfg.quantizer = read_quantizer(top.at("quantizer"));

  const std::vector<int> exits = top.int_list("exits");
  revalidate([&] {
    cfg.exits = ExitSet(exits);
    cfg.exits.validate_against(cfg.profile);
  }, "exits");

  cfg.target_accuracy = top.number("target_accuracy");
  const double chance = 1.0 / cfg.profile.J;
  if (!(cfg.target_accuracy > chance && cfg.target_accuracy < 1.0)) {
    throw ConfigError("target_accuracy", "must lie in (1/J, 1)");
  }
  if (top.has("seed")) cfg.seed = top.unsigned_integer("seed");
  if (top.has("monte_carlo")) cfg.monte_carlo = read_monte_carlo(top.at("monte_carlo"));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace chadapt::cli
