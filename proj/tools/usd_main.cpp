/*
Copyright (c) 2026 The usd developers.

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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "usd/analytic.hpp"
#include "usd/bounds.hpp"
#include "usd/geometry.hpp"
#include "usd/io.hpp"
#include "usd/optimizer.hpp"
#include "usd/sampler.hpp"

namespace {

constexpr int kOracleGridDensity = 10001;

struct ProblemSource {
  std::string file;
  std::string example;
  double r = 0.5;
  double s = 0.5;
  double eta1 = 0.5;
  bool eta1_set = false;
};

void add_problem_options(CLI::App *cmd, ProblemSource &src) {
  cmd->add_option("file", src.file, "JSON problem file {dim, eta1, rho1, rho2}");
  cmd->add_option("--example", src.example, "built-in example family")
      ->check(CLI::IsMember({"rank23", "rs"}));
  cmd->add_option("--r", src.r, "rs family: larger-eigenvalue weight of rho1 (default 0.5)");
  cmd->add_option("--s", src.s, "rs family: larger-eigenvalue weight of rho2 (default 0.5)");
  cmd->add_option_function<double>(
         "--eta1", [&src](const double &v) { src.eta1 = v; src.eta1_set = true; },
         "prior probability of rho1 (overrides the file value)");
}

usd::DiscriminationProblem resolve_problem(const ProblemSource &src) {
  if (!src.file.empty() && !src.example.empty()) {
    throw usd::ValidationError("give either a problem file or --example, not both");
  }
  if (!src.file.empty()) {
    usd::DiscriminationProblem loaded = usd::load_problem(src.file);
    if (!src.eta1_set) {
      return loaded;
    }
    return usd::DiscriminationProblem(loaded.rho1(), loaded.rho2(), src.eta1);
  }
  if (src.example.empty()) {
    throw usd::ValidationError("no problem given: pass a file or --example rank23|rs");
  }
  const usd::ExampleFamily family = src.example == "rank23"
                                        ? usd::ExampleFamily::rank23()
                                        : usd::ExampleFamily::rs(src.r, src.s);
  auto [rho1, rho2] = usd::build_states(family);
  return usd::DiscriminationProblem(std::move(rho1), std::move(rho2), src.eta1);
}

// Output redirection: --out writes to a file, otherwise standard output.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string &path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw usd::ValidationError("cannot write to " + path);
      }
    }
  }

  std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

double default_tol() {
  if (const char *env = std::getenv("USD_TOL")) {
    try {
      size_t used = 0;
      const std::string text(env);
      const double value = std::stod(text, &used);
      if (used != text.size() || !(value > 0.0)) {
        throw std::invalid_argument(text);
      }
      return value;
    } catch (const std::exception &) {
      throw usd::ValidationError(std::string("USD_TOL is not a positive number: ") + env);
    }
  }
  return usd::OptimizeOptions{}.tol;
}

int cmd_bounds(const ProblemSource &src, const std::string &out_path) {
  const usd::DiscriminationProblem problem = resolve_problem(src);
  const usd::SupportGeometry geometry = usd::build_geometry(problem);
  const usd::BoundsReport report = usd::lower_bound(problem, geometry);
  OutputTarget out(out_path);
  out.stream() << usd::bounds_report_to_json(problem.eta1(), report).dump(2) << "\n";
  return 0;
}

int cmd_optimize(const ProblemSource &src, const usd::OptimizeOptions &options,
                 bool run_oracle, bool emit_povm, const std::string &out_path) {
  const usd::DiscriminationProblem problem = resolve_problem(src);
  const usd::SupportGeometry geometry = usd::build_geometry(problem);
  usd::OptimizationResult result;
  int exit_code = 0;
  try {
    result = usd::optimize(problem, geometry, options);
  } catch (const usd::NotConverged &e) {
    std::cerr << "warning: " << e.what() << "\n";
    result = e.best();
    exit_code = 2;
  }
  std::optional<usd::OracleComparison> oracle;
  if (run_oracle) {
    usd::OracleComparison cmp;
    cmp.grid_density = kOracleGridDensity;
    cmp.q = usd::brute_force_oracle(problem, geometry, kOracleGridDensity);
    cmp.gap = result.q_min - cmp.q;
    oracle = cmp;
  }
  OutputTarget out(out_path);
  out.stream() << usd::optimization_result_to_json(result, emit_povm, oracle).dump(2) << "\n";
  return exit_code;
}

int cmd_scan_region(int grid, const std::string &out_path) {
  const std::vector<usd::RegionPoint> points = usd::region_scan(grid);
  OutputTarget out(out_path);
  usd::write_region_csv(out.stream(), points);
  return 0;
}

int cmd_sweep(const ProblemSource &src, int grid, const usd::OptimizeOptions &options,
              const std::string &out_path) {
  if (grid < 2) {
    throw usd::ValidationError("sweep: --grid must be at least 2");
  }
  ProblemSource base = src;
  base.eta1_set = true;
  std::vector<usd::SweepRow> rows;
  rows.reserve(grid);
  int exit_code = 0;
  for (int i = 1; i <= grid; ++i) {
    base.eta1 = static_cast<double>(i) / (grid + 1);
    const usd::DiscriminationProblem problem = resolve_problem(base);
    const usd::SupportGeometry geometry = usd::build_geometry(problem);
    usd::OptimizationResult result;
    try {
      result = usd::optimize(problem, geometry, options);
    } catch (const usd::NotConverged &e) {
      std::cerr << "warning: eta1 = " << base.eta1 << ": " << e.what() << "\n";
      result = e.best();
      exit_code = 2;
    }
    const usd::BoundsReport report = usd::lower_bound(problem, geometry);
    usd::SweepRow row;
    row.eta1 = base.eta1;
    row.q_min = result.q_min;
    row.lower_bound = report.lower_bound;
    row.regime = report.regime;
    row.kind = result.measurement_kind;
    rows.push_back(row);
  }
  OutputTarget out(out_path);
  usd::write_sweep_csv(out.stream(), rows);
  return exit_code;
}

int cmd_sample(const ProblemSource &src, const std::string &povm_path, long long shots,
               std::uint64_t seed, const usd::OptimizeOptions &options,
               const std::string &out_path) {
  const usd::DiscriminationProblem problem = resolve_problem(src);
  usd::Povm povm;
  if (!povm_path.empty()) {
    povm = usd::load_povm(povm_path);
  } else {
    const usd::SupportGeometry geometry = usd::build_geometry(problem);
    povm = usd::optimize(problem, geometry, options).povm;
  }
  const usd::SampleReport report = usd::sample(problem, povm, shots, seed);
  OutputTarget out(out_path);
  out.stream() << usd::sample_report_to_json(report).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Optimal unambiguous discrimination of two mixed quantum states"};
  app.require_subcommand(1);

  usd::OptimizeOptions options;
  std::string out_path;
  std::string povm_path;
  int grid_scan = 201;
  int grid_sweep = 99;
  long long shots = 1000000;
  std::uint64_t seed = 1;
  bool run_oracle = false;
  bool emit_povm = false;
  ProblemSource src_bounds, src_optimize, src_sweep, src_sample;

  CLI::App *bounds = app.add_subcommand(
      "bounds", "fidelity, overlaps, regime, and the failure-probability lower bound");
  add_problem_options(bounds, src_bounds);
  bounds->add_option("--out", out_path, "write the report to a file");

  CLI::App *optimize = app.add_subcommand(
      "optimize", "numerically minimal failure probability and the optimal POVM");
  add_problem_options(optimize, src_optimize);
  optimize->add_option("--tol", options.tol, "convergence tolerance");
  optimize->add_option("--max-iter", options.max_iter, "Newton iteration budget");
  optimize->add_flag("--oracle", run_oracle,
                     "cross-check against the gridded oracle and report the gap");
  optimize->add_flag("--emit-povm", emit_povm, "include the POVM matrices in the report");
  optimize->add_option("--out", out_path, "write the report to a file");

  CLI::App *scan = app.add_subcommand(
      "scan-region", "classify the (r, s) parameter square by the saturation rule");
  scan->add_option("--grid", grid_scan, "points per axis (default 201)")
      ->check(CLI::Range(2, 100000));
  scan->add_option("--out", out_path, "write the CSV to a file");

  CLI::App *sweep = app.add_subcommand(
      "sweep", "q_min and the lower bound on a uniform prior grid over (0, 1)");
  add_problem_options(sweep, src_sweep);
  sweep->add_option("--grid,--eta-grid", grid_sweep, "number of interior grid points (default 99)");
  sweep->add_option("--tol", options.tol, "convergence tolerance");
  sweep->add_option("--max-iter", options.max_iter, "Newton iteration budget");
  sweep->add_option("--out", out_path, "write the CSV to a file");

  CLI::App *sample = app.add_subcommand(
      "sample", "Monte Carlo simulation of the measurement against the Born rule");
  add_problem_options(sample, src_sample);
  sample->add_option("--povm", povm_path, "JSON POVM file (default: optimize internally)");
  sample->add_option("--shots", shots, "number of experiments (default 1e6)");
  sample->add_option("--seed", seed, "RNG seed (default 1)");
  sample->add_option("--tol", options.tol, "tolerance for the internal optimization");
  sample->add_option("--max-iter", options.max_iter, "budget for the internal optimization");
  sample->add_option("--out", out_path, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  // --tol beats USD_TOL beats the built-in default. The environment is only
  // consulted (and validated) when the value would actually be used.
  for (CLI::App *sub : {optimize, sweep, sample}) {
    if (app.got_subcommand(sub) && sub->count("--tol") == 0) {
      try {
        options.tol = default_tol();
      } catch (const usd::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }
  }

  try {
    if (app.got_subcommand(bounds)) {
      return cmd_bounds(src_bounds, out_path);
    }
    if (app.got_subcommand(optimize)) {
      return cmd_optimize(src_optimize, options, run_oracle, emit_povm, out_path);
    }
    if (app.got_subcommand(scan)) {
      return cmd_scan_region(grid_scan, out_path);
    }
    if (app.got_subcommand(sweep)) {
      return cmd_sweep(src_sweep, grid_sweep, options, out_path);
    }
    if (app.got_subcommand(sample)) {
      return cmd_sample(src_sample, povm_path, shots, seed, options, out_path);
    }
  } catch (const usd::NotConverged &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const usd::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
