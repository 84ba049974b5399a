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

#include "usd/analytic.hpp"

#include <cmath>
#include <sstream>

namespace usd {

namespace {

void check_unit_interval(double x, const char *name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << x << " must lie in [0, 1]";
    throw ValidationError(msg.str());
  }
}

std::pair<DensityOperator, DensityOperator> build_rank23() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CMat vecs1 = CMat::Zero(4, 2);
  vecs1(1, 0) = 1.0;
  vecs1(2, 1) = inv_sqrt2;
  vecs1(3, 1) = -inv_sqrt2;
  RVec vals1(2);
  vals1 << 0.5, 0.5;

  CMat vecs2 = CMat::Zero(4, 3);
  vecs2(0, 0) = 1.0;
  vecs2(1, 1) = 1.0;
  vecs2(2, 2) = 1.0;
  RVec vals2(3);
  vals2 << 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0;

  return {DensityOperator::from_eigensystem(vals1, vecs1),
          DensityOperator::from_eigensystem(vals2, vecs2)};
}

std::pair<DensityOperator, DensityOperator> build_rs(double r, double s) {
  check_unit_interval(r, "r");
  check_unit_interval(s, "s");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  CMat vecs1 = CMat::Zero(4, 2);
  vecs1(0, 0) = 1.0;
  vecs1(1, 1) = 1.0;
  RVec vals1(2);
  vals1 << r, 1.0 - r;

  CMat vecs2 = CMat::Zero(4, 2);
  vecs2(0, 0) = inv_sqrt2;
  vecs2(2, 0) = inv_sqrt2;
  vecs2(1, 1) = inv_sqrt2;
  vecs2(3, 1) = inv_sqrt2;
  RVec vals2(2);
  vals2 << s, 1.0 - s;

  return {DensityOperator::from_eigensystem(vals1, vecs1),
          DensityOperator::from_eigensystem(vals2, vecs2)};
}

}  // namespace

std::pair<DensityOperator, DensityOperator> build_states(const ExampleFamily &family) {
  if (family.kind == ExampleKind::kRank23) {
    return build_rank23();
  }
  return build_rs(family.r, family.s);
}

Rank23Solution qmin_rank23(double eta1) {
  check_unit_interval(eta1, "eta1");
  const double eta2 = 1.0 - eta1;
  Rank23Solution out;
  if (3.0 * eta1 <= eta2) {
    out.q = 1.0 - eta2 / 2.0;
    out.branch = 1;
    out.kind = MeasurementKind::kVonNeumann;
  } else if (3.0 * eta1 >= 4.0 * eta2) {
    out.q = 1.0 - eta1 / 4.0 - eta2 / 3.0;
    out.branch = 3;
    out.kind = MeasurementKind::kVonNeumann;
  } else {
    out.q = eta1 / 6.0 + (1.0 + std::sqrt(3.0 * eta1 * eta2)) / 3.0;
    out.branch = 2;
    out.kind = MeasurementKind::kGeneralized;
  }
  return out;
}

double fidelity_rs(double r, double s) {
  check_unit_interval(r, "r");
  check_unit_interval(s, "s");
  return (std::sqrt(r * s) + std::sqrt((1.0 - r) * (1.0 - s))) / std::sqrt(2.0);
}

std::vector<RegionPoint> region_scan(int grid) {
  if (grid < 2) {
    throw ValidationError("region_scan: grid must be at least 2");
  }
  const double step = 1.0 / (grid - 1);
  std::vector<RegionPoint> points;
  points.reserve(static_cast<size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i) {
    const double r = i * step;
    for (int j = 0; j < grid; ++j) {
      const double s = j * step;
      auto [rho1, rho2] = build_rs(r, s);
      const double f = fidelity(rho1, rho2);
      RegionPoint point;
      point.r = r;
      point.s = s;
      point.f2 = f * f;
      point.cond1 = leq_tol(0.25, point.f2);
      points.push_back(point);
    }
  }
  return points;
}

std::vector<std::pair<double, double>> region_boundary(const std::vector<RegionPoint> &points,
                                                       int grid) {
  if (grid < 2 || points.size() != static_cast<size_t>(grid) * grid) {
    throw ValidationError("region_boundary: points do not form a grid x grid scan");
  }
  std::vector<std::pair<double, double>> boundary;
  auto at = [&](int i, int j) -> const RegionPoint & {
    return points[static_cast<size_t>(i) * grid + j];
  };
  auto crossing = [&](const RegionPoint &a, const RegionPoint &b) {
    // Linear interpolation of F^2 - 1/4 along the edge.
    const double fa = a.f2 - 0.25;
    const double fb = b.f2 - 0.25;
    double t = fa == fb ? 0.5 : fa / (fa - fb);
    t = std::min(1.0, std::max(0.0, t));
    boundary.emplace_back(a.r + t * (b.r - a.r), a.s + t * (b.s - a.s));
  };
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      if (i + 1 < grid && at(i, j).cond1 != at(i + 1, j).cond1) {
        crossing(at(i, j), at(i + 1, j));
      }
      if (j + 1 < grid && at(i, j).cond1 != at(i, j + 1).cond1) {
        crossing(at(i, j), at(i, j + 1));
      }
    }
  }
  return boundary;
}

}  // namespace usd
