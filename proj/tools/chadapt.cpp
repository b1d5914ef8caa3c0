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

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace chadapt::cli;

// Writes to `path`, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel-adaptive early-exit inference planner"};
  app.require_subcommand(1);

  std::string config_path, out_path;

  auto* plan = app.add_subcommand("plan", "Solve for (q, ell) under the configured link");
  PlanOptions plan_opts;
  plan->add_option("config", config_path, "Run configuration (JSON)")->required();
  plan->add_flag("--cr", plan_opts.with_cr, "Also print the continuous relaxation");
  plan->add_flag("--json", plan_opts.json, "Print structured JSON instead of key=value");

  auto* sweep = app.add_subcommand("sweep", "EPR and accuracy over an SNR grid");
  std::string snr_range, variants, p0_list;
  sweep->add_option("config", config_path, "Run configuration (JSON)")->required();
  sweep->add_option("--snr-db", snr_range, "from:to:step in dB")->required();
  sweep->add_option("--exits-variants", variants, "Exit sets, e.g. \"9,37;9,19,37\"");
  sweep->add_option("--p0-list", p0_list, "Target accuracies, e.g. 0.6,0.7");
  sweep->add_option("--out", out_path, "CSV destination (default stdout)");

  auto* validate = app.add_subcommand("validate", "Analytic vs Monte Carlo accuracy");
  std::string grid, perturb;
  validate->add_option("config", config_path, "Run configuration (JSON)")->required();
  validate->add_option("--grid", grid, "Cells, e.g. \"q=6,7,8,12;ell=24,28,32,36\"");
  validate->add_option("--perturb", perturb,
                       "Scale analytic-side coefficients, e.g. c1=0.5");
  validate->add_option("--out", out_path, "CSV destination (default stdout)");

  auto* fit = app.add_subcommand("fit", "Fit profile coefficients to (ell, value) data");
  std::string input, kind = "affine";
  fit->add_option("--input", input, "Two-column CSV (ell, value)")->required();
  fit->add_option("--kind", kind, "affine or exp")
      ->check(CLI::IsMember({"affine", "exp"}));
  fit->add_option("--out", out_path, "JSON record destination");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fit) {
      std::ifstream in(input, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open " + input);
      std::unique_ptr<std::ofstream> record;
      if (!out_path.empty()) {
        record = std::make_unique<std::ofstream>(out_path, std::ios::binary);
        if (!*record) throw std::runtime_error("cannot open " + out_path + " for writing");
      }
      return cmd_fit(in, kind == "exp" ? FitKind::kExponential : FitKind::kAffine,
                     std::cout, record.get(), std::cerr);
    }

    const RunConfig cfg = load_config(config_path);
    if (*plan) return cmd_plan(cfg, plan_opts, std::cout);

    if (*sweep) {
      SweepOptions opts;
      opts.snr_db = parse_range(snr_range);
      if (!variants.empty()) opts.variants = parse_variants(variants);
      if (!p0_list.empty()) opts.p0 = parse_number_list(p0_list);
      Output out(out_path);
      return cmd_sweep(cfg, opts, out.stream());
    }

    ValidateOptions opts;
    if (!grid.empty()) opts.grid = parse_grid(grid);
    if (!perturb.empty()) opts.perturb = parse_perturb(perturb);
    Output out(out_path);
    return cmd_validate(cfg, opts, out.stream(), std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}
