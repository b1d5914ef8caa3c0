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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "chadapt/accuracy.hpp"
#include "chadapt/rng.hpp"

namespace chadapt::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::optional<double> to_number(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(x)) return std::nullopt;
  return x;
}

double require_number(const std::string& text, const std::string& what) {
  const auto x = to_number(text);
  if (!x) throw std::invalid_argument(what + ": '" + text + "' is not a finite number");
  return *x;
}

std::string variant_name(const std::vector<int>& layers) {
  std::string name;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i > 0) name += '-';
    name += std::to_string(layers[i]);
  }
  return name;
}

const char* flag(bool b) { return b ? "1" : "0"; }

void print_plan_kv(const Plan& p, const std::string& prefix, std::ostream& out) {
  out << prefix << "feasible=" << flag(p.feasible) << '\n'
      << prefix << "q=" << fmt(p.q) << '\n'
      << prefix << "ell=" << fmt(p.ell) << '\n'
      << prefix << "predicted_accuracy=" << fmt(p.predicted_accuracy) << '\n'
      << prefix << "t_comm_s=" << fmt(p.t_comm) << '\n'
      << prefix << "t_comp_s=" << fmt(p.t_comp) << '\n'
      << prefix << "epr_bits_per_s=" << fmt(p.epr) << '\n';
}

void print_plan_json(const Plan& p, std::ostream& out) {
  out << "{\"feasible\": " << (p.feasible ? "true" : "false")
      << ", \"q\": " << fmt(p.q) << ", \"ell\": " << fmt(p.ell)
      << ", \"predicted_accuracy\": " << fmt(p.predicted_accuracy)
      << ", \"t_comm_s\": " << fmt(p.t_comm) << ", \"t_comp_s\": " << fmt(p.t_comp)
      << ", \"epr_bits_per_s\": " << fmt(p.epr) << "}";
}

FeatureProfile perturbed(FeatureProfile p,
                         const std::vector<std::pair<std::string, double>>& factors) {
  for (const auto& [key, factor] : factors) {
    if (key == "c1") p.c1 *= factor;
    else if (key == "c2") p.c2 *= factor;
    else if (key == "c3") p.c3 *= factor;
    else if (key == "c4") p.c4 *= factor;
    else throw std::invalid_argument("--perturb: unknown coefficient '" + key + "'");
  }
  p.validate();
  return p;
}

}  // namespace

std::string fmt(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::vector<double> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw std::invalid_argument("--snr-db: expected from:to:step, got '" + text + "'");
  }
  const double from = require_number(parts[0], "--snr-db from");
  const double to = require_number(parts[1], "--snr-db to");
  const double step = require_number(parts[2], "--snr-db step");
  if (!(step > 0.0)) throw std::invalid_argument("--snr-db: step must be > 0");
  if (to < from) throw std::invalid_argument("--snr-db: empty grid (to < from)");
  const double span = (to - from) / step;
  if (span > 1e6) throw std::invalid_argument("--snr-db: grid too large");
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = from + static_cast<double>(i) * step;
  return grid;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(require_number(part, "list"));
  if (out.empty()) throw std::invalid_argument("list: empty");
  return out;
}

std::vector<SweepVariant> parse_variants(const std::string& text) {
  std::vector<SweepVariant> out;
  for (const auto& group : split(text, ';')) {
    std::vector<int> layers;
    for (const auto& item : split(group, ',')) {
      const double x = require_number(item, "--exits-variants");
      if (x != std::floor(x) || std::abs(x) > 1e9) {
        throw std::invalid_argument("--exits-variants: '" + item + "' is not an integer");
      }
      layers.push_back(static_cast<int>(x));
    }
    const std::string name = variant_name(layers);
    out.push_back({name, ExitSet(std::move(layers))});
  }
  if (out.empty()) throw std::invalid_argument("--exits-variants: empty");
  return out;
}

ValidateGrid parse_grid(const std::string& text) {
  ValidateGrid grid;
  bool seen_q = false, seen_ell = false;
  for (const auto& part : split(text, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--grid: expected key=values, got '" + part + "'");
    }
    const std::string key = trim(part.substr(0, eq));
    const auto values = parse_number_list(part.substr(eq + 1));
    if (key == "q" && !seen_q) {
      grid.q = values;
      seen_q = true;
    } else if (key == "ell" && !seen_ell) {
      grid.ell = values;
      seen_ell = true;
    } else {
      throw std::invalid_argument("--grid: unexpected or repeated key '" + key + "'");
    }
  }
  if (!seen_q || !seen_ell) throw std::invalid_argument("--grid: needs both q= and ell=");
  return grid;
}

std::vector<std::pair<std::string, double>> parse_perturb(const std::string& text) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& part : split(text, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--perturb: expected coef=factor, got '" + part + "'");
    }
    out.emplace_back(trim(part.substr(0, eq)),
                     require_number(part.substr(eq + 1), "--perturb factor"));
  }
  return out;
}

int cmd_plan(const RunConfig& cfg, const PlanOptions& opts, std::ostream& out) {
  const Plan plan = solve_discrete(cfg.link, cfg.compute, cfg.profile, cfg.quantizer,
                                   cfg.exits, cfg.target_accuracy);
  std::optional<Plan> cr;
  if (opts.with_cr) {
    cr = solve_cr(cfg.link, cfg.compute, cfg.profile, cfg.quantizer, cfg.target_accuracy);
  }
  if (opts.json) {
    out << "{\"discrete\": ";
    print_plan_json(plan, out);
    if (cr) {
      out << ", \"cr\": ";
      print_plan_json(*cr, out);
    }
    out << "}\n";
  } else {
    out << "solver=discrete\n";
    print_plan_kv(plan, "", out);
    if (cr) print_plan_kv(*cr, "cr.", out);
  }
  return plan.feasible ? kExitOk : kExitInfeasible;
}

int cmd_sweep(const RunConfig& cfg, const SweepOptions& opts, std::ostream& csv) {
  if (opts.snr_db.empty()) throw std::invalid_argument("sweep: empty SNR grid");
  std::vector<SweepVariant> variants = opts.variants;
  if (variants.empty()) variants.push_back({variant_name(cfg.exits.layers()), cfg.exits});
  for (const auto& v : variants) v.exits.validate_against(cfg.profile);
  std::vector<double> p0 = opts.p0;
  if (p0.empty()) p0.push_back(cfg.target_accuracy);

  SweepScenario scenario;
  scenario.link = cfg.link;
  scenario.compute = cfg.compute;
  scenario.profile = cfg.profile;
  scenario.quantizer = cfg.quantizer;
  scenario.tasks = cfg.monte_carlo.tasks;
  scenario.seed = cfg.seed;

  const auto rows = sweep(opts.snr_db, scenario, variants, p0);
  csv << kSweepHeader << '\n';
  for (const auto& r : rows) {
    csv << fmt(r.snr_db) << ',' << r.variant << ',' << fmt(r.p0) << ',' << fmt(r.q) << ','
        << fmt(r.ell) << ',' << fmt(r.pred_acc) << ',' << fmt(r.emp_acc) << ','
        << fmt(r.emp_ci) << ',' << fmt(r.epr) << ',' << fmt(r.epr_cr) << ','
        << flag(r.feasible) << '\n';
  }
  return kExitOk;
}

std::vector<ValidateCell> validate_cells(const RunConfig& cfg, const ValidateOptions& opts) {
  if (opts.grid.q.empty() || opts.grid.ell.empty()) {
    throw std::invalid_argument("validate: empty grid");
  }
  const FeatureProfile analytic_profile = perturbed(cfg.profile, opts.perturb);
  std::vector<ValidateCell> cells;
  std::uint64_t index = 0;
  for (double q : opts.grid.q) {
    for (double ell : opts.grid.ell) {
      const std::uint64_t seed = mix_seed(cfg.seed, index++);
      const double sigma2 = quant_variance(q, cfg.quantizer);
      const auto clean = generate_dataset(cfg.profile, ell, cfg.monte_carlo.n_per_class, seed);
      const auto noisy = distort(clean, sigma2, cfg.profile, seed);
      const auto emp =
          empirical_accuracy(noisy, cfg.profile, kappa_distorted(sigma2, ell, cfg.profile));

      ValidateCell cell;
      cell.q = q;
      cell.ell = ell;
      cell.analytic = accuracy_model(q, ell, analytic_profile, cfg.quantizer);
      cell.empirical = emp.accuracy;
      cell.n = emp.n;
      cell.se = std::sqrt(cell.analytic * (1.0 - cell.analytic) / static_cast<double>(emp.n));
      cell.pass = std::abs(cell.empirical - cell.analytic) < 3.0 * cell.se;
      cells.push_back(cell);
    }
  }
  return cells;
}

int cmd_validate(const RunConfig& cfg, const ValidateOptions& opts, std::ostream& csv,
                 std::ostream& log) {
  const auto cells = validate_cells(cfg, opts);
  std::size_t passed = 0;
  csv << kValidateHeader << '\n';
  for (const auto& c : cells) {
    const double z = c.se > 0.0 ? (c.empirical - c.analytic) / c.se : 0.0;
    csv << fmt(c.q) << ',' << fmt(c.ell) << ',' << fmt(c.analytic) << ','
        << fmt(c.empirical) << ',' << fmt(c.se) << ',' << fmt(z) << ',' << flag(c.pass)
        << '\n';
    passed += c.pass ? 1 : 0;
  }
  log << "validate: " << passed << "/" << cells.size() << " cells within 3 SE"
      << (passed == cells.size() ? "" : " (FAIL)") << '\n';
  return passed == cells.size() ? kExitOk : kExitValidationFailed;
}

DepthSeries read_depth_csv(std::istream& in) {
  std::vector<DepthPoint> points;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t lineno = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto fields = split(t, ',');
    const auto ell = fields.size() == 2 ? to_number(fields[0]) : std::nullopt;
    const auto value = fields.size() == 2 ? to_number(fields[1]) : std::nullopt;
    const bool header = first_row && fields.size() == 2 && !ell && !value;
    first_row = false;
    if (header) continue;
    if (!ell || !value) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected two numeric columns (ell, value), got '" +
                                  t + "'");
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (points[k].ell == *ell) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": depth " +
                                    fmt(*ell) + " repeats line " + std::to_string(lines[k]));
      }
    }
    points.push_back({*ell, *value});
    lines.push_back(lineno);
  }
  if (points.size() < 2) throw std::invalid_argument("input: need at least 2 data rows");
  return DepthSeries(std::move(points));
}

int cmd_fit(std::istream& in, FitKind kind, std::ostream& out, std::ostream* record,
            std::ostream& log) {
  const DepthSeries series = read_depth_csv(in);
  const std::string n = std::to_string(series.size());
  if (kind == FitKind::kAffine) {
    const AffineFit fit = fit_affine(series);
    out << "kind=affine\nn=" << n << "\nc1=" << fmt(fit.c1) << "\nc2=" << fmt(fit.c2)
        << "\nrms=" << fmt(fit.rms) << '\n';
    if (record) {
      *record << "{\"kind\": \"affine\", \"n\": " << n << ", \"c1\": " << fmt(fit.c1)
              << ", \"c2\": " << fmt(fit.c2) << ", \"rms\": " << fmt(fit.rms) << "}\n";
    }
    return kExitOk;
  }
  const ExponentialFit fit = fit_exponential(series);
  out << "kind=exp\nn=" << n << "\nc3=" << fmt(fit.c3) << "\nc4=" << fmt(fit.c4)
      << "\nrms_log=" << fmt(fit.rms_log)
      << "\nnonpositive_decay=" << flag(fit.nonpositive_decay) << '\n';
  if (record) {
    *record << "{\"kind\": \"exp\", \"n\": " << n << ", \"c3\": " << fmt(fit.c3)
            << ", \"c4\": " << fmt(fit.c4) << ", \"rms_log\": " << fmt(fit.rms_log)
            << ", \"nonpositive_decay\": " << (fit.nonpositive_decay ? "true" : "false")
            << "}\n";
  }
  if (fit.nonpositive_decay) {
    log << "warning: fitted c4 = " << fmt(fit.c4)
        << " is not positive; the series does not decay with depth\n";
  }
  return kExitOk;
}

}  // namespace chadapt::cli
