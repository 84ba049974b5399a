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

#include "usd/geometry.hpp"
#include "usd/problem.hpp"

namespace usd {

enum class MeasurementKind { kVonNeumann, kGeneralized };

std::string to_string(MeasurementKind kind);

// The measurement triple: Pi1 identifies rho1, Pi2 identifies rho2, Pi0 is
// the inconclusive outcome. alpha and beta are the coefficient blocks of the
// detection operators in the v/w bases; they are empty for POVMs loaded from
// files without basis information.
struct Povm {
  CMat pi0;
  CMat pi1;
  CMat pi2;
  CMat alpha;  // d1_perp x d1_perp Hermitian block, Pi1 = V alpha V^dagger
  CMat beta;   // d2_perp x d2_perp Hermitian block, Pi2 = W beta W^dagger

  // Builds Pi1 = V alpha V^dagger, Pi2 = W beta W^dagger, Pi0 = I - Pi1 - Pi2
  // from coefficient blocks. The no-error condition holds by construction.
  static Povm from_coefficients(const SupportGeometry &geometry, const CMat &alpha,
                                const CMat &beta);

  // Builds a POVM from explicit operators (e.g. loaded from a file), with
  // empty coefficient blocks.
  static Povm from_operators(const CMat &pi0, const CMat &pi1, const CMat &pi2);

  int dim() const { return static_cast<int>(pi0.rows()); }

  // Checks completeness within 1e-9, positivity of all three operators within
  // the 1e-9 eigenvalue slack, and the no-error residuals |rho1 Pi2|_F and
  // |rho2 Pi1|_F within 1e-8. Throws InvalidPovm naming the failed check.
  void validate(const DiscriminationProblem &problem) const;
};

// Evaluates both lines of the failure functional,
//   Q = eta1 Tr(rho1 Pi0) + eta2 Tr(rho2 Pi0)
//     = 1 - eta1 Tr(rho1 Pi1) - eta2 Tr(rho2 Pi2),
// asserts their agreement within 1e-10, validates the POVM, and returns the
// first-line value.
double failure_probability(const DiscriminationProblem &problem, const Povm &povm);

// VON_NEUMANN iff all three operators are idempotent within 1e-7 Frobenius
// (scaled by max(1, |Pi_k|_F)).
MeasurementKind classify_measurement(const Povm &povm);

}  // namespace usd
