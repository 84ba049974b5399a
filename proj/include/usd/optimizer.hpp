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

#include <utility>

#include "usd/geometry.hpp"
#include "usd/povm.hpp"
#include "usd/problem.hpp"

namespace usd {

struct OptimizeOptions {
  double tol = 1e-9;
  int max_iter = 50000;
};

struct OptimizationResult {
  Povm povm;
  double q_min = 1.0;
  // (Tr(rho1 Pi0), Tr(rho2 Pi0)): the per-state inconclusive probabilities.
  std::pair<double, double> selective_failures{1.0, 1.0};
  int iterations = 0;
  bool converged = false;
  MeasurementKind measurement_kind = MeasurementKind::kVonNeumann;
};

// Thrown when the iteration budget runs out; carries the best iterate found
// so far (with converged = false) so callers can still report it.
class NotConverged : public Error {
 public:
  NotConverged(const std::string &msg, OptimizationResult best)
      : Error(msg), best_(std::move(best)) {}
  const OptimizationResult &best() const { return best_; }

 private:
  OptimizationResult best_;
};

// Minimizes the failure probability over detection operators supported on the
// v/w bases: maximize eta1 Tr(rho1 Pi1) + eta2 Tr(rho2 Pi2) subject to
// alpha >= 0, beta >= 0 and I - Pi1 - Pi2 >= 0. Solved with a log-barrier
// interior-point method (Newton steps on the Hermitian coefficient blocks,
// decreasing barrier parameter, backtracking line search); every iterate is
// strictly feasible. Boundary priors eta1 in {0, 1} and the coinciding-support
// case (d1_perp = d2_perp = 0, where Q = 1) are solved directly.
OptimizationResult optimize(const DiscriminationProblem &problem,
                            const SupportGeometry &geometry,
                            const OptimizeOptions &options = {});

// Independent verification oracle: exhaustive grid search over the free
// coefficients. Requires at most 4 free parameters after exploiting
// structure (diagonal coefficients when the overlap structure holds, closed
// forms for one-sided cases); within each sector of mutually overlapping
// basis vectors, the last coefficient is maximized analytically given the
// gridded ones. Returns an upper bound on Q_min tight to O(1/grid_density).
// Throws TooLarge when the parameter count or the grid volume is infeasible.
double brute_force_oracle(const DiscriminationProblem &problem,
                          const SupportGeometry &geometry, int grid_density);

}  // namespace usd
