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
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "usd/analytic.hpp"
#include "usd/bounds.hpp"

namespace {

usd::DiscriminationProblem family_problem(const usd::ExampleFamily &family, double eta1) {
  auto [rho1, rho2] = usd::build_states(family);
  return usd::DiscriminationProblem(std::move(rho1), std::move(rho2), eta1);
}

usd::BoundsReport report_for(const usd::ExampleFamily &family, double eta1) {
  usd::DiscriminationProblem problem = family_problem(family, eta1);
  return usd::lower_bound(problem, usd::build_geometry(problem));
}

}  // namespace

TEST_SUITE_BEGIN("bounds");

TEST_CASE("fidelity bound values") {
  CHECK(usd::fidelity_bound(family_problem(usd::ExampleFamily::rs(0.5, 0.5), 0.5)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(usd::fidelity_bound(family_problem(usd::ExampleFamily::rs(1.0, 0.0), 0.5)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(usd::fidelity_bound(family_problem(usd::ExampleFamily::rs(0.3, 0.6), 0.0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("regime classification for the symmetric rs family") {
  usd::DiscriminationProblem problem = family_problem(usd::ExampleFamily::rs(0.5, 0.5), 0.5);
  usd::SupportGeometry geom = usd::build_geometry(problem);
  usd::RegimeInfo info = usd::regime_classify(problem, geom);
  CHECK(info.regime == usd::Regime::kMiddle);
  CHECK(info.left_threshold == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(info.right_threshold == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  REQUIRE(info.eta_window.has_value());
  CHECK(info.eta_window->first == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(info.eta_window->second == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  SUBCASE("left and right priors") {
    usd::DiscriminationProblem left = family_problem(usd::ExampleFamily::rs(0.5, 0.5), 0.1);
    CHECK(usd::regime_classify(left, usd::build_geometry(left)).regime == usd::Regime::kLeft);
    usd::DiscriminationProblem right = family_problem(usd::ExampleFamily::rs(0.5, 0.5), 0.9);
    CHECK(usd::regime_classify(right, usd::build_geometry(right)).regime ==
          usd::Regime::kRight);
  }
}

TEST_CASE("lower bound branch values for the worked families") {
  SUBCASE("rs middle") {
    usd::BoundsReport report = report_for(usd::ExampleFamily::rs(0.5, 0.5), 0.5);
    CHECK(report.regime == usd::Regime::kMiddle);
    CHECK(report.lower_bound == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("rs left") {
    // eta1 F^2 / Tr(P1 rho2) + eta2 Tr(P1 rho2) = 0.2 + 0.8 * 0.5 = 0.6. The
    // sanity anchor: any bound below 2 sqrt(eta1 eta2) F ~ 0.566 would
    // contradict the universal fidelity floor.
    usd::BoundsReport report = report_for(usd::ExampleFamily::rs(0.5, 0.5), 0.2);
    CHECK(report.regime == usd::Regime::kLeft);
    CHECK(report.lower_bound == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(report.lower_bound >= usd::fidelity_bound(family_problem(
                                    usd::ExampleFamily::rs(0.5, 0.5), 0.2)) -
                                    1e-12);
  }
  SUBCASE("identical states") {
    auto [rho1, rho2] = usd::build_states(usd::ExampleFamily::rank23());
    usd::DiscriminationProblem problem(rho1, rho1, 0.3);
    usd::BoundsReport report = usd::lower_bound(problem, usd::build_geometry(problem));
    CHECK(report.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(report.lower_bound == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("rank23 right branch at even priors") {
    usd::BoundsReport report = report_for(usd::ExampleFamily::rank23(), 0.5);
    CHECK(report.regime == usd::Regime::kRight);
    // eta2 F^2/ Tr(P2 rho1) + eta1 Tr(P2 rho1) with F^2 = (1+sqrt(2))^2/12.
    const double f2 = std::pow((1.0 + std::sqrt(2.0)) / (2.0 * std::sqrt(3.0)), 2);
    CHECK(report.lower_bound ==
          doctest::Approx(0.5 * f2 / 0.75 + 0.5 * 0.75).epsilon(1e-12));
  }
}

TEST_CASE("branch values agree at the regime boundaries") {
  auto [rho1, rho2] = usd::build_states(usd::ExampleFamily::rs(0.5, 0.5));
  for (double eta1 : {1.0 / 3.0, 2.0 / 3.0}) {
    usd::DiscriminationProblem problem(rho1, rho2, eta1);
    usd::SupportGeometry geom = usd::build_geometry(problem);
    usd::BoundsReport report = usd::lower_bound(problem, geom);
    const double eta2 = 1.0 - eta1;
    const double f = report.fidelity;
    const double middle = 2.0 * std::sqrt(eta1 * eta2) * f;
    const double left = eta1 * f * f / report.overlap12 + eta2 * report.overlap12;
    const double right = eta2 * f * f / report.overlap21 + eta1 * report.overlap21;
    const double outer = eta1 < 0.5 ? left : right;
    CHECK(std::abs(outer - middle) < 1e-9);
    CHECK(std::abs(report.lower_bound - middle) < 1e-9);
  }
}

TEST_CASE("global floor and swap symmetry on random problems") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 100; ++trial) {
    usd::DiscriminationProblem problem = usd_test::random_problem(rng);
    usd::BoundsReport report = usd::lower_bound(problem, usd::build_geometry(problem));
    CHECK(usd::leq_tol(usd::fidelity_bound(problem), report.lower_bound));
    CHECK(report.lower_bound <= 1.0 + 1e-12);
    CHECK(report.saturation_possible ==
          usd::leq_tol(report.overlap21 * report.overlap12, report.fidelity * report.fidelity));

    usd::DiscriminationProblem swapped(problem.rho2(), problem.rho1(), problem.eta2());
    usd::BoundsReport mirror = usd::lower_bound(swapped, usd::build_geometry(swapped));
    CHECK(std::abs(mirror.lower_bound - report.lower_bound) <
          1e-11 * std::max(1.0, report.lower_bound));
  }
}

TEST_CASE("swap maps left regime to right regime") {
  usd::BoundsReport left = report_for(usd::ExampleFamily::rs(0.5, 0.5), 0.2);
  usd::DiscriminationProblem swapped = [] {
    auto [rho1, rho2] = usd::build_states(usd::ExampleFamily::rs(0.5, 0.5));
    return usd::DiscriminationProblem(std::move(rho2), std::move(rho1), 0.8);
  }();
  usd::BoundsReport right = usd::lower_bound(swapped, usd::build_geometry(swapped));
  CHECK(left.regime == usd::Regime::kLeft);
  CHECK(right.regime == usd::Regime::kRight);
  CHECK(std::abs(left.lower_bound - right.lower_bound) < 1e-12);
}

TEST_CASE("selective floors") {
  SUBCASE("rank23") {
    usd::DiscriminationProblem problem = family_problem(usd::ExampleFamily::rank23(), 0.5);
    auto [floor1, floor2] = usd::selective_floor(usd::build_geometry(problem));
    CHECK(floor1 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(floor2 == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("rs family") {
    usd::DiscriminationProblem problem = family_problem(usd::ExampleFamily::rs(0.3, 0.8), 0.5);
    auto [floor1, floor2] = usd::selective_floor(usd::build_geometry(problem));
    CHECK(floor1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(floor2 == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("orthogonal supports") {
    usd::DiscriminationProblem problem = family_problem(usd::ExampleFamily::rs(1.0, 0.0), 0.5);
    auto [floor1, floor2] = usd::selective_floor(usd::build_geometry(problem));
    CHECK(floor1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(floor2 == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("saturation condition") {
  SUBCASE("symmetric rs point satisfies it") {
    usd::DiscriminationProblem problem = family_problem(usd::ExampleFamily::rs(0.5, 0.5), 0.5);
    usd::SupportGeometry geom = usd::build_geometry(problem);
    CHECK(usd::saturation_condition(geom, usd::fidelity(problem.rho1(), problem.rho2())));
  }
  SUBCASE("white corner fails it") {
    usd::DiscriminationProblem problem =
        family_problem(usd::ExampleFamily::rs(0.95, 0.05), 0.5);
    usd::SupportGeometry geom = usd::build_geometry(problem);
    // Overlap product 1/4 exceeds F^2 = 0.095 near the corner.
    CHECK_FALSE(usd::saturation_condition(geom, usd::fidelity(problem.rho1(), problem.rho2())));
  }
  SUBCASE("identical states satisfy it") {
    auto [rho1, rho2] = usd::build_states(usd::ExampleFamily::rs(0.4, 0.4));
    usd::DiscriminationProblem problem(rho1, rho1, 0.5);
    usd::SupportGeometry geom = usd::build_geometry(problem);
    CHECK(usd::saturation_condition(geom, usd::fidelity(problem.rho1(), problem.rho2())));
  }
}

TEST_CASE("orthogonal supports report a zero bound with degenerate thresholds") {
  usd::DiscriminationProblem problem = family_problem(usd::ExampleFamily::rs(1.0, 0.0), 0.4);
  usd::SupportGeometry geom = usd::build_geometry(problem);
  usd::RegimeInfo info = usd::regime_classify(problem, geom);
  CHECK(info.regime == usd::Regime::kMiddle);
  CHECK(std::isinf(info.left_threshold));
  CHECK(info.right_threshold == doctest::Approx(0.0).epsilon(1e-12));
  usd::BoundsReport report = usd::lower_bound(problem, geom);
  CHECK(report.lower_bound == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(report.regime == usd::Regime::kMiddle);
}

TEST_SUITE_END();
