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
#include <vector>

#include "usd/povm.hpp"
#include "usd/problem.hpp"

namespace usd {

// The two built-in families with known closed-form answers: a rank-2 vs
// rank-3 pair in dimension 4 with a piecewise-exact Q_min, and the
// two-parameter (r, s) family of rank-2 states whose support eigenvectors
// overlap pairwise with |<r_i|s_j>| = delta_ij / sqrt(2).
enum class ExampleKind { kRank23, kRsFamily };

struct ExampleFamily {
  ExampleKind kind = ExampleKind::kRank23;
  double r = 0.5;
  double s = 0.5;

  static ExampleFamily rank23() { return {ExampleKind::kRank23, 0.0, 0.0}; }
  static ExampleFamily rs(double r, double s) { return {ExampleKind::kRsFamily, r, s}; }
};

// Constructs the states with pinned eigenbases (the families have degenerate
// spectra at symmetric parameters, where the eigenbasis is a modelling
// choice that downstream structure detection relies on). The rs family is
// embedded in dimension 4 as |r_i> = |a_i>, |s_j> = (|a_j> + |b_j>)/sqrt(2)
// over an orthonormal {a_1, a_2, b_1, b_2}.
std::pair<DensityOperator, DensityOperator> build_states(const ExampleFamily &family);

// Exact minimal failure probability of the rank23 example:
//   1 - eta2/2                           when 3 eta1 <= eta2 (branch 1)
//   eta1/6 + (1 + sqrt(3 eta1 eta2))/3   in between           (branch 2)
//   1 - eta1/4 - eta2/3                  when 3 eta1 >= 4 eta2 (branch 3)
// The outer branches are von Neumann measurements, the middle one is a
// generalized measurement; boundaries belong to the outer branches.
struct Rank23Solution {
  double q = 1.0;
  int branch = 1;
  MeasurementKind kind = MeasurementKind::kVonNeumann;
};

Rank23Solution qmin_rank23(double eta1);

// Closed-form fidelity of the rs family:
// (sqrt(r s) + sqrt((1-r)(1-s))) / sqrt(2).
double fidelity_rs(double r, double s);

// One point of the parameter-space scan. cond1 is the saturation rule
// F^2 >= 1/4 (the family has overlap product 1/2 * 1/2 in generic position).
struct RegionPoint {
  double r = 0.0;
  double s = 0.0;
  double f2 = 0.0;
  bool cond1 = false;
};

// Uniform grid over [0,1]^2 with F^2 computed spectrally from the built
// states (the closed form is validated against it elsewhere). Row-major:
// r varies in the outer loop.
std::vector<RegionPoint> region_scan(int grid);

// Level crossings of F^2 = 1/4 between adjacent grid points, linearly
// interpolated. Presentation aid for plotting the region boundary.
std::vector<std::pair<double, double>> region_boundary(const std::vector<RegionPoint> &points,
                                                       int grid);

}  // namespace usd
