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

#include <cmath>
#include <string>

#include "doctest.h"
#include "test_support.hpp"
#include "usd/analytic.hpp"
#include "usd/bounds.hpp"
#include "usd/povm.hpp"

using usd::CMat;

namespace {

usd::DiscriminationProblem rank23_problem(double eta1) {
  auto [rho1, rho2] = usd::build_states(usd::ExampleFamily::rank23());
  return usd::DiscriminationProblem(std::move(rho1), std::move(rho2), eta1);
}

}  // namespace

TEST_SUITE_BEGIN("povm");

TEST_CASE("coefficient construction reproduces the worked failure probability") {
  // alpha11 = 1, beta11 = 1, beta22 = 0 gives Q = 1 - eta1/4 - eta2/3.
  usd::DiscriminationProblem problem = rank23_problem(0.3);
  usd::SupportGeometry geom = usd::build_geometry(problem);
  CMat alpha = CMat::Identity(1, 1);
  CMat beta = CMat::Zero(2, 2);
  beta(0, 0) = 1.0;
  usd::Povm povm = usd::Povm::from_coefficients(geom, alpha, beta);
  povm.validate(problem);
  const double q = usd::failure_probability(problem, povm);
  CHECK(q == doctest::Approx(1.0 - 0.3 / 4.0 - 0.7 / 3.0).epsilon(1e-12));

  // Pi0 touches the PSD boundary: one eigenvalue sits at exactly
  // (2 - beta22 - alpha11 - sqrt(alpha11^2 + beta22^2))/2 = 0.
  usd::Eigensystem eigs = usd::eig_hermitian(usd::HermitianOperator(povm.pi0));
  CHECK(usd::is_psd(usd::HermitianOperator(povm.pi0), 1e-9));
  CHECK(std::abs(eigs.values(3)) < 1e-12);
}

TEST_CASE("always-inconclusive and perfect measurements") {
  SUBCASE("Pi0 = I") {
    usd::DiscriminationProblem problem = rank23_problem(0.5);
    usd::SupportGeometry geom = usd::build_geometry(problem);
    usd::Povm povm =
        usd::Povm::from_coefficients(geom, CMat::Zero(1, 1), CMat::Zero(2, 2));
    CHECK(usd::failure_probability(problem, povm) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(usd::classify_measurement(povm) == usd::MeasurementKind::kVonNeumann);
  }
  SUBCASE("orthogonal supports discriminate perfectly with projectors") {
    auto [rho1, rho2] = usd::build_states(usd::ExampleFamily::rs(1.0, 0.0));
    usd::DiscriminationProblem problem(std::move(rho1), std::move(rho2), 0.5);
    usd::SupportGeometry geom = usd::build_geometry(problem);
    usd::Povm povm = usd::Povm::from_operators(
        CMat::Identity(4, 4) - geom.p1 - geom.p2, geom.p1, geom.p2);
    CHECK(usd::failure_probability(problem, povm) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(usd::classify_measurement(povm) == usd::MeasurementKind::kVonNeumann);
  }
}

TEST_CASE("validate names the failed invariant") {
  usd::DiscriminationProblem problem = rank23_problem(0.5);
  const CMat eye = CMat::Identity(4, 4);

  SUBCASE("completeness") {
    usd::Povm povm = usd::Povm::from_operators(eye, 0.5 * eye, 0.1 * eye);
    try {
      povm.validate(problem);
      FAIL("expected InvalidPovm");
    } catch (const usd::InvalidPovm &e) {
      CHECK(std::string(e.what()).find("completeness") != std::string::npos);
    }
  }
  SUBCASE("positivity") {
    CMat pi1 = CMat::Zero(4, 4);
    pi1(0, 0) = -0.01;
    usd::Povm povm = usd::Povm::from_operators(eye - pi1, pi1, CMat::Zero(4, 4));
    CHECK_THROWS_AS(povm.validate(problem), usd::InvalidPovm);
  }
  SUBCASE("no-error residual") {
    // Pi1 = P1 overlaps the support of rho2, so rho2 Pi1 != 0.
    usd::SupportGeometry geom = usd::build_geometry(problem);
    usd::Povm povm = usd::Povm::from_operators(eye - geom.p1, geom.p1, CMat::Zero(4, 4));
    try {
      povm.validate(problem);
      FAIL("expected InvalidPovm");
    } catch (const usd::InvalidPovm &e) {
      CHECK(std::string(e.what()).find("rho2") != std::string::npos);
    }
  }
}

TEST_CASE("failure probability validates and cross-checks both forms") {
  usd::DiscriminationProblem problem = rank23_problem(0.4);
  usd::Povm broken = usd::Povm::from_operators(CMat::Identity(4, 4),
                                               0.2 * CMat::Identity(4, 4), CMat::Zero(4, 4));
  CHECK_THROWS_AS(usd::failure_probability(problem, broken), usd::InvalidPovm);
}

TEST_CASE("measurement classification by idempotency") {
  usd::DiscriminationProblem problem = rank23_problem(0.5);
  usd::SupportGeometry geom = usd::build_geometry(problem);
  SUBCASE("fractional coefficients are generalized") {
    usd::Povm povm =
        usd::Povm::from_coefficients(geom, 0.5 * CMat::Identity(1, 1), CMat::Zero(2, 2));
    CHECK(usd::classify_measurement(povm) == usd::MeasurementKind::kGeneralized);
  }
  SUBCASE("projector coefficients are von Neumann") {
    CMat beta = CMat::Zero(2, 2);
    beta(0, 0) = 1.0;
    usd::Povm povm = usd::Povm::from_coefficients(geom, CMat::Identity(1, 1), beta);
    CHECK(usd::classify_measurement(povm) == usd::MeasurementKind::kVonNeumann);
  }
}

TEST_CASE("coefficient blocks are stored and symmetrized") {
  usd::DiscriminationProblem problem = rank23_problem(0.5);
  usd::SupportGeometry geom = usd::build_geometry(problem);
  CMat beta(2, 2);
  beta << usd::Complex(0.5, 0.0), usd::Complex(0.1, 0.05), usd::Complex(0.1, -0.05),
      usd::Complex(0.25, 0.0);
  usd::Povm povm = usd::Povm::from_coefficients(geom, 0.5 * CMat::Identity(1, 1), beta);
  CHECK(povm.alpha.rows() == 1);
  CHECK(povm.beta.rows() == 2);
  CHECK(usd_test::max_abs_diff(povm.beta, povm.beta.adjoint()) < 1e-15);
  // Pi2 reconstructs from the block.
  CHECK(usd_test::max_abs_diff(povm.pi2, geom.w_basis * povm.beta * geom.w_basis.adjoint()) <
        1e-14);
  // Completeness holds by construction.
  CHECK(usd_test::max_abs_diff(povm.pi0 + povm.pi1 + povm.pi2, CMat::Identity(4, 4)) < 1e-14);

  SUBCASE("operators loaded without bases have empty blocks") {
    usd::Povm loaded = usd::Povm::from_operators(povm.pi0, povm.pi1, povm.pi2);
    CHECK(loaded.alpha.size() == 0);
    CHECK(loaded.beta.size() == 0);
    loaded.validate(problem);
  }
}

TEST_CASE("selective failure floors hold for every valid construction") {
  usd::DiscriminationProblem problem = rank23_problem(0.6);
  usd::SupportGeometry geom = usd::build_geometry(problem);
  auto [floor1, floor2] = usd::selective_floor(geom);
  for (double a : {0.0, 0.3, 0.6}) {
    usd::Povm povm = usd::Povm::from_coefficients(geom, a * CMat::Identity(1, 1),
                                                  0.5 * a * CMat::Identity(2, 2));
    povm.validate(problem);
    const double fail1 = (problem.rho1().matrix() * povm.pi0).trace().real();
    const double fail2 = (problem.rho2().matrix() * povm.pi0).trace().real();
    CHECK(fail1 >= floor1 - 1e-8);
    CHECK(fail2 >= floor2 - 1e-8);
  }
}

TEST_SUITE_END();
