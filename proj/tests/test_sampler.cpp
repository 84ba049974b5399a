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

#include "doctest.h"
#include "test_support.hpp"
#include "usd/analytic.hpp"
#include "usd/optimizer.hpp"
#include "usd/sampler.hpp"

using usd::CMat;

namespace {

usd::DiscriminationProblem rank23_problem(double eta1) {
  auto [rho1, rho2] = usd::build_states(usd::ExampleFamily::rank23());
  return usd::DiscriminationProblem(rho1, rho2, eta1);
}

}  // namespace

TEST_SUITE_BEGIN("sampler");

TEST_CASE("trivial POVMs produce deterministic outcome streams") {
  usd::DiscriminationProblem problem = rank23_problem(0.3);
  const int d = problem.dim();

  SUBCASE("inconclusive-only POVM always reports outcome 0") {
    usd::Povm povm = usd::Povm::from_operators(CMat::Identity(d, d), CMat::Zero(d, d),
                                               CMat::Zero(d, d));
    usd::SampleReport report = usd::sample(problem, povm, 5000, 7);
    CHECK(report.counts[0] == 5000);
    CHECK(report.counts[1] == 0);
    CHECK(report.counts[2] == 0);
    CHECK(report.empirical_q == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(report.predicted_q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.error_count == 0);
  }

  SUBCASE("orthogonal supports admit an error-free projective measurement") {
    auto [rho1, rho2] = usd::build_states(usd::ExampleFamily::rs(1.0, 0.0));
    usd::DiscriminationProblem ortho(rho1, rho2, 0.4);
    usd::SupportGeometry geometry = usd::build_geometry(ortho);
    const CMat pi1 = geometry.v_basis * geometry.v_basis.adjoint();
    const CMat pi2 = geometry.w_basis * geometry.w_basis.adjoint();
    const CMat pi0 = CMat::Identity(ortho.dim(), ortho.dim()) - pi1 - pi2;
    usd::Povm povm = usd::Povm::from_operators(pi0, pi1, pi2);
    usd::SampleReport report = usd::sample(ortho, povm, 20000, 11);
    CHECK(report.error_count == 0);
    // Both states are identified with certainty, so failures are rare draws
    // from the tiny numerical remainder of Pi0.
    CHECK(report.counts[0] <= 2);
    CHECK(report.empirical_q <= 1e-3);
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  usd::DiscriminationProblem problem = rank23_problem(0.5);
  usd::OptimizationResult result = usd::optimize(problem, usd::build_geometry(problem));
  usd::SampleReport a = usd::sample(problem, result.povm, 40000, 123456789);
  usd::SampleReport b = usd::sample(problem, result.povm, 40000, 123456789);
  CHECK(a.counts == b.counts);
  CHECK(a.empirical_q == b.empirical_q);
  CHECK(a.error_count == b.error_count);
  CHECK(a.seed == b.seed);
  CHECK(a.rng == "splitmix64");

  usd::SampleReport c = usd::sample(problem, result.povm, 40000, 987654321);
  CHECK(a.counts != c.counts);
}

TEST_CASE("empirical failure rate concentrates around the prediction") {
  usd::DiscriminationProblem problem = rank23_problem(0.5);
  usd::OptimizationResult result = usd::optimize(problem, usd::build_geometry(problem));
  const long long shots = 100000;
  usd::SampleReport report = usd::sample(problem, result.povm, shots, 20260825);

  const double q = usd::qmin_rank23(0.5).q;
  CHECK(report.predicted_q == doctest::Approx(q).epsilon(1e-8));
  // Four-sigma band for a Bernoulli(q) mean over 1e5 shots.
  const double band = 4.0 * std::sqrt(q * (1.0 - q) / shots);
  CHECK(std::abs(report.empirical_q - q) <= band);
  CHECK(report.error_count == 0);
  CHECK(report.counts[0] + report.counts[1] + report.counts[2] == shots);
}

TEST_CASE("four-sigma coverage across many seeds") {
  usd::DiscriminationProblem problem = rank23_problem(0.4);
  usd::OptimizationResult result = usd::optimize(problem, usd::build_geometry(problem));
  const long long shots = 2000;
  const double q = result.q_min;
  const double band = 4.0 * std::sqrt(q * (1.0 - q) / shots);
  int inside = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    usd::SampleReport report = usd::sample(problem, result.povm, shots, seed);
    if (std::abs(report.empirical_q - report.predicted_q) <= band) {
      ++inside;
    }
  }
  // P(|mean - q| > 4 sigma) is about 6e-5 per seed, so 100 draws should
  // essentially never produce two outliers.
  CHECK(inside >= 99);
}

TEST_CASE("invalid inputs are rejected") {
  usd::DiscriminationProblem problem = rank23_problem(0.5);
  const int d = problem.dim();
  usd::Povm valid = usd::Povm::from_operators(CMat::Identity(d, d), CMat::Zero(d, d),
                                              CMat::Zero(d, d));
  CHECK_THROWS_AS(usd::sample(problem, valid, 0, 1), usd::ValidationError);
  CHECK_THROWS_AS(usd::sample(problem, valid, -5, 1), usd::ValidationError);

  // Completeness failure: Pi0 + Pi1 + Pi2 != I.
  usd::Povm broken = valid;
  broken.pi0 = 0.5 * CMat::Identity(d, d);
  CHECK_THROWS_AS(usd::sample(problem, broken, 100, 1), usd::InvalidPovm);
}

TEST_SUITE_END();
