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

#include "usd/povm.hpp"

#include <cmath>
#include <sstream>

namespace usd {

std::string to_string(MeasurementKind kind) {
  return kind == MeasurementKind::kVonNeumann ? "VON_NEUMANN" : "GENERALIZED";
}

Povm Povm::from_coefficients(const SupportGeometry &geometry, const CMat &alpha,
                             const CMat &beta) {
  if (alpha.rows() != geometry.d1_perp() || alpha.cols() != geometry.d1_perp() ||
      beta.rows() != geometry.d2_perp() || beta.cols() != geometry.d2_perp()) {
    throw DimensionMismatch("povm: coefficient blocks do not match the basis sizes");
  }
  const int dim = geometry.dim();
  Povm povm;
  povm.alpha = 0.5 * (alpha + alpha.adjoint());
  povm.beta = 0.5 * (beta + beta.adjoint());
  povm.pi1 = geometry.v_basis * povm.alpha * geometry.v_basis.adjoint();
  povm.pi2 = geometry.w_basis * povm.beta * geometry.w_basis.adjoint();
  povm.pi0 = CMat::Identity(dim, dim) - povm.pi1 - povm.pi2;
  return povm;
}

Povm Povm::from_operators(const CMat &pi0, const CMat &pi1, const CMat &pi2) {
  if (pi0.rows() != pi1.rows() || pi0.rows() != pi2.rows() ||
      pi0.rows() != pi0.cols() || pi1.rows() != pi1.cols() || pi2.rows() != pi2.cols()) {
    throw DimensionMismatch("povm: operators must be square and equally sized");
  }
  Povm povm;
  povm.pi0 = HermitianOperator(pi0).matrix();
  povm.pi1 = HermitianOperator(pi1).matrix();
  povm.pi2 = HermitianOperator(pi2).matrix();
  povm.alpha = CMat(0, 0);
  povm.beta = CMat(0, 0);
  return povm;
}

void Povm::validate(const DiscriminationProblem &problem) const {
  if (dim() != problem.dim()) {
    throw DimensionMismatch("povm: dimension does not match the problem");
  }
  const CMat identity = CMat::Identity(dim(), dim());
  const double completeness = (pi0 + pi1 + pi2 - identity).cwiseAbs().maxCoeff();
  if (completeness > tol::kCompleteness) {
    std::ostringstream msg;
    msg << "povm: completeness violated by " << completeness;
    throw InvalidPovm(msg.str());
  }
  const CMat *ops[3] = {&pi0, &pi1, &pi2};
  for (int k = 0; k < 3; ++k) {
    if (!is_psd(HermitianOperator(*ops[k]), tol::kPsdSlack)) {
      std::ostringstream msg;
      msg << "povm: Pi" << k << " is not positive semidefinite within slack";
      throw InvalidPovm(msg.str());
    }
  }
  const double res1 = (problem.rho1().matrix() * pi2).norm();
  const double res2 = (problem.rho2().matrix() * pi1).norm();
  if (res1 > tol::kNoErrorResidual || res2 > tol::kNoErrorResidual) {
    std::ostringstream msg;
    msg << "povm: no-error residuals |rho1 Pi2| = " << res1 << ", |rho2 Pi1| = "
        << res2 << " exceed " << tol::kNoErrorResidual;
    throw InvalidPovm(msg.str());
  }
}

double failure_probability(const DiscriminationProblem &problem, const Povm &povm) {
  povm.validate(problem);
  const double q_direct = problem.eta1() * (problem.rho1().matrix() * povm.pi0).trace().real() +
                          problem.eta2() * (problem.rho2().matrix() * povm.pi0).trace().real();
  const double q_complement =
      1.0 - problem.eta1() * (problem.rho1().matrix() * povm.pi1).trace().real() -
      problem.eta2() * (problem.rho2().matrix() * povm.pi2).trace().real();
  if (std::abs(q_direct - q_complement) > 1e-10) {
    std::ostringstream msg;
    msg << "povm: the two failure-probability forms disagree: " << q_direct
        << " vs " << q_complement;
    throw InvalidPovm(msg.str());
  }
  return q_direct;
}

MeasurementKind classify_measurement(const Povm &povm) {
  const CMat *ops[3] = {&povm.pi0, &povm.pi1, &povm.pi2};
  for (const CMat *op : ops) {
    const double dev = (*op * *op - *op).norm();
    if (dev > tol::kProjector * std::max(1.0, op->norm())) {
      return MeasurementKind::kGeneralized;
    }
  }
  return MeasurementKind::kVonNeumann;
}

}  // namespace usd
