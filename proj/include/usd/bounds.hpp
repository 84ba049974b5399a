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

#include <optional>
#include <string>
#include <utility>

#include "usd/geometry.hpp"
#include "usd/problem.hpp"

namespace usd {

// Prior regimes of the three-branch failure bound. LEFT is the strongly
// rho2-weighted side (sqrt(eta2/eta1) >= F / Tr(P1 rho2)), RIGHT its mirror,
// MIDDLE the window where the fidelity bound itself is the binding branch.
enum class Regime { kLeft, kMiddle, kRight };

std::string to_string(Regime regime);

// Output of regime_classify: the selected branch, the raw ratio thresholds,
// and the prior window (in eta1) on which the MIDDLE branch applies. The
// window is empty exactly when the saturation condition fails.
struct RegimeInfo {
  Regime regime = Regime::kMiddle;
  double left_threshold = 0.0;   // F / Tr(P1 rho2), +inf when the trace is 0
  double right_threshold = 0.0;  // Tr(P2 rho1) / F
  std::optional<std::pair<double, double>> eta_window;
};

// Everything the closed-form machinery produces for one problem instance.
struct BoundsReport {
  double fidelity = 0.0;
  double overlap12 = 0.0;  // Tr(P1 rho2)
  double overlap21 = 0.0;  // Tr(P2 rho1)
  Regime regime = Regime::kMiddle;
  double lower_bound = 0.0;
  bool saturation_possible = false;
  std::optional<std::pair<double, double>> eta_window;
};

// The universal fidelity bound 2 sqrt(eta1 eta2) F.
double fidelity_bound(const DiscriminationProblem &problem);

// Classifies the priors into the branch regimes; one-sided limits at
// eta1 in {0, 1}.
RegimeInfo regime_classify(const DiscriminationProblem &problem,
                           const SupportGeometry &geometry);

// Evaluates the branch selected by regime_classify:
//   LEFT:   eta1 F^2 / Tr(P1 rho2) + eta2 Tr(P1 rho2)
//   MIDDLE: 2 sqrt(eta1 eta2) F
//   RIGHT:  eta2 F^2 / Tr(P2 rho1) + eta1 Tr(P2 rho1)
// For orthogonal supports (F = 0) the report is MIDDLE with bound 0; the
// selective floors carry the real constraint in that case.
BoundsReport lower_bound(const DiscriminationProblem &problem,
                         const SupportGeometry &geometry);

// Per-state failure floors (Tr(P2 rho1), Tr(P1 rho2)) that any error-free
// measurement must respect.
std::pair<double, double> selective_floor(const SupportGeometry &geometry);

// Necessary condition for fidelity-bound saturation:
// Tr(P2 rho1) Tr(P1 rho2) <= F^2, compared at tolerance 1e-12.
bool saturation_condition(const SupportGeometry &geometry, double fidelity);

}  // namespace usd
