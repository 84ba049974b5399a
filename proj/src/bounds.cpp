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

#include "usd/bounds.hpp"

#include <cmath>
#include <limits>

namespace usd {

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::kLeft:
      return "LEFT";
    case Regime::kMiddle:
      return "MIDDLE";
    case Regime::kRight:
      return "RIGHT";
  }
  return "MIDDLE";
}

double fidelity_bound(const DiscriminationProblem &problem) {
  const double f = fidelity(problem.rho1(), problem.rho2());
  return 2.0 * std::sqrt(problem.eta1() * problem.eta2()) * f;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double branch_value(Regime regime, double eta1, double f, double t12, double t21) {
  const double eta2 = 1.0 - eta1;
  switch (regime) {
    case Regime::kLeft:
      return eta1 * f * f / t12 + eta2 * t12;
    case Regime::kRight:
      return eta2 * f * f / t21 + eta1 * t21;
    case Regime::kMiddle:
      break;
  }
  return 2.0 * std::sqrt(eta1 * eta2) * f;
}

RegimeInfo classify_impl(double eta1, double f, double t12, double t21, bool window_nonempty) {
  RegimeInfo info;
  if (f <= 0.0) {
    // Orthogonal supports: both outer branches are unreachable and the
    // middle branch evaluates to 0.
    info.regime = Regime::kMiddle;
    info.left_threshold = kInf;
    info.right_threshold = 0.0;
    return info;
  }
  info.left_threshold = t12 > 0.0 ? f / t12 : kInf;
  info.right_threshold = t21 / f;
  if (window_nonempty) {
    info.eta_window = std::make_pair(t12 * t12 / (t12 * t12 + f * f),
                                     f * f / (f * f + t21 * t21));
  }

  // sqrt(eta2 / eta1), with one-sided limits at the prior endpoints.
  const double ratio = eta1 <= 0.0   ? kInf
                       : eta1 >= 1.0 ? 0.0
                                     : std::sqrt((1.0 - eta1) / eta1);
  const bool left_ok = std::isinf(ratio) || leq_tol(info.left_threshold, ratio);
  const bool right_ok = !std::isinf(ratio) && leq_tol(ratio, info.right_threshold);
  if (left_ok && right_ok) {
    // Only possible when the middle window is empty; both outer branches are
    // valid lower bounds, so report the tighter one.
    const double lv = branch_value(Regime::kLeft, eta1, f, t12, t21);
    const double rv = branch_value(Regime::kRight, eta1, f, t12, t21);
    info.regime = lv >= rv ? Regime::kLeft : Regime::kRight;
  } else if (left_ok) {
    info.regime = Regime::kLeft;
  } else if (right_ok) {
    info.regime = Regime::kRight;
  } else {
    info.regime = Regime::kMiddle;
  }
  return info;
}

}  // namespace

RegimeInfo regime_classify(const DiscriminationProblem &problem,
                           const SupportGeometry &geometry) {
  const double f = fidelity(problem.rho1(), problem.rho2());
  const bool nonempty = saturation_condition(geometry, f);
  return classify_impl(problem.eta1(), f, geometry.overlap12, geometry.overlap21, nonempty);
}

BoundsReport lower_bound(const DiscriminationProblem &problem,
                         const SupportGeometry &geometry) {
  BoundsReport report;
  report.fidelity = fidelity(problem.rho1(), problem.rho2());
  report.overlap12 = geometry.overlap12;
  report.overlap21 = geometry.overlap21;
  report.saturation_possible = saturation_condition(geometry, report.fidelity);

  RegimeInfo info = classify_impl(problem.eta1(), report.fidelity, report.overlap12,
                                  report.overlap21, report.saturation_possible);
  report.regime = info.regime;
  report.eta_window = info.eta_window;
  report.lower_bound = branch_value(info.regime, problem.eta1(), report.fidelity,
                                    report.overlap12, report.overlap21);
  return report;
}

std::pair<double, double> selective_floor(const SupportGeometry &geometry) {
  return {geometry.overlap21, geometry.overlap12};
}

bool saturation_condition(const SupportGeometry &geometry, double fidelity) {
  return leq_tol(geometry.overlap21 * geometry.overlap12, fidelity * fidelity);
}

}  // namespace usd
