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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "usd/analytic.hpp"
#include "usd/bounds.hpp"
#include "usd/optimizer.hpp"
#include "usd/povm.hpp"
#include "usd/problem.hpp"
#include "usd/sampler.hpp"

namespace usd {

// Problem files are JSON objects {dim, eta1, rho1, rho2}. Each density
// operator is either a dense row-major matrix with entries as [re, im]
// pairs, or an eigensystem object {values: [..], vectors: [[..], ..]} whose
// vectors are complex column vectors in the same pair encoding. Validation
// failures are reported as ValidationError naming the offending field.
nlohmann::json problem_to_json(const DiscriminationProblem &problem);
DiscriminationProblem parse_problem(const nlohmann::json &j);
DiscriminationProblem load_problem(const std::string &path);

// POVM files are JSON objects {dim, pi0, pi1, pi2} with optional alpha/beta
// coefficient blocks. Loading keeps only the operators; the blocks are
// advisory output for human readers.
nlohmann::json povm_to_json(const Povm &povm);
Povm parse_povm(const nlohmann::json &j);
Povm load_povm(const std::string &path);

nlohmann::json bounds_report_to_json(double eta1, const BoundsReport &report);

// Result of cross-checking the optimizer against the gridded oracle.
struct OracleComparison {
  double q = 0.0;
  double gap = 0.0;
  int grid_density = 0;
};

nlohmann::json optimization_result_to_json(const OptimizationResult &result,
                                           bool emit_povm,
                                           const std::optional<OracleComparison> &oracle);

nlohmann::json sample_report_to_json(const SampleReport &report);

// Shortest decimal form that round-trips to the same double (17 significant
// digits); used for all CSV output.
std::string format_float(double x);

// CSV with header `r,s,F2,cond1`; cond1 rendered as 0/1.
void write_region_csv(std::ostream &out, const std::vector<RegionPoint> &points);

struct SweepRow {
  double eta1 = 0.0;
  double q_min = 0.0;
  double lower_bound = 0.0;
  Regime regime = Regime::kMiddle;
  MeasurementKind kind = MeasurementKind::kVonNeumann;
};

// CSV with header `eta1,q_min,lower_bound,regime,kind`.
void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);

}  // namespace usd
