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
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chadapt/fitting.hpp"
#include "chadapt/simulator.hpp"
#include "config.hpp"

namespace chadapt::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitValidationFailed = 3;

/// Decimal, 9 significant digits, '.' radix.
std::string fmt(double x);

/// "from:to:step", inclusive of `to` up to rounding. Throws
/// std::invalid_argument on a malformed or empty range.
std::vector<double> parse_range(const std::string& text);

/// Comma-separated numbers.
std::vector<double> parse_number_list(const std::string& text);

/// "9,37;9,19,37": one exit set per ';'-separated group, named "9-37" etc.
std::vector<SweepVariant> parse_variants(const std::string& text);

struct ValidateGrid {
  std::vector<double> q;
  std::vector<double> ell;
};

/// "q=6,7,8,12;ell=24,28,32,36".
ValidateGrid parse_grid(const std::string& text);

/// "c1=0.5,c4=2": multiplicative factors applied to the analytic-side
/// profile only.
std::vector<std::pair<std::string, double>> parse_perturb(const std::string& text);

struct PlanOptions {
  bool with_cr = false;
  bool json = false;
};

/// Prints the discrete plan (and the continuous relaxation with with_cr).
/// Returns kExitOk when feasible, kExitInfeasible otherwise.
int cmd_plan(const RunConfig& cfg, const PlanOptions& opts, std::ostream& out);

struct SweepOptions {
  std::vector<double> snr_db;
  std::vector<SweepVariant> variants;  // empty: the config's exit set
  std::vector<double> p0;              // empty: the config's target
};

inline constexpr const char* kSweepHeader =
    "snr_db,variant,p0,q,ell,pred_acc,emp_acc,emp_ci,epr_bits_per_s,"
    "epr_cr_bits_per_s,feasible";

int cmd_sweep(const RunConfig& cfg, const SweepOptions& opts, std::ostream& csv);

struct ValidateOptions {
  ValidateGrid grid{{6, 7, 8, 12}, {24, 28, 32, 36}};
  std::vector<std::pair<std::string, double>> perturb;
};

struct ValidateCell {
  double q = 0.0;
  double ell = 0.0;
  double analytic = 0.0;
  double empirical = 0.0;
  double se = 0.0;
  std::size_t n = 0;
  bool pass = false;
};

/// Analytic vs simulated accuracy per grid cell, N = J * n_per_class samples
/// each; a cell passes when the gap is below 3 standard errors.
std::vector<ValidateCell> validate_cells(const RunConfig& cfg, const ValidateOptions& opts);

inline constexpr const char* kValidateHeader =
    "q,ell,analytic_acc,empirical_acc,se,z,pass";

/// Writes the per-cell CSV, prints a summary line to `log`.
/// Returns kExitOk when every cell passes, kExitValidationFailed otherwise.
int cmd_validate(const RunConfig& cfg, const ValidateOptions& opts, std::ostream& csv,
                 std::ostream& log);

enum class FitKind { kAffine, kExponential };

/// Two numeric columns (ell, value); an optional header on the first line,
/// blank lines and '#' comments are skipped. Throws std::invalid_argument
/// naming the line of the first malformed row.
DepthSeries read_depth_csv(std::istream& in);

/// Prints coefficients as key=value lines to `out` and, when `record` is
/// given, a JSON record to it. Warnings go to `log`.
int cmd_fit(std::istream& in, FitKind kind, std::ostream& out, std::ostream* record,
            std::ostream& log);

}  // namespace chadapt::cli
