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

#include "usd/sampler.hpp"

#include <sstream>

namespace usd {

namespace {

// splitmix64: tiny, fast, and identical on every platform, which keeps the
// sampled counts reproducible across compilers.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97f4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

std::array<double, 3> born_distribution(const DensityOperator &rho, const Povm &povm,
                                        const char *label) {
  std::array<double, 3> p{};
  const CMat rho_m = rho.matrix();
  const CMat *ops[3] = {&povm.pi0, &povm.pi1, &povm.pi2};
  for (int k = 0; k < 3; ++k) {
    p[k] = (rho_m * (*ops[k])).trace().real();
  }
  for (int k = 0; k < 3; ++k) {
    if (p[k] < -1e-9) {
      std::ostringstream msg;
      msg << "outcome probability " << k << " for " << label << " is " << p[k];
      throw BadProbabilities(msg.str());
    }
    if (p[k] < 0.0) {
      p[k] = 0.0;
    }
  }
  const double total = p[0] + p[1] + p[2];
  for (int k = 0; k < 3; ++k) {
    p[k] /= total;
  }
  return p;
}

}  // namespace

SampleReport sample(const DiscriminationProblem &problem, const Povm &povm,
                    long long shots, std::uint64_t seed) {
  if (shots < 1) {
    throw ValidationError("sample: shots must be at least 1");
  }
  povm.validate(problem);

  SampleReport report;
  report.shots = shots;
  report.seed = seed;

  // predicted_q uses the raw (unclamped) traces so it matches the analytic
  // failure probability of the measurement.
  const double raw0 =
      (problem.rho1().matrix() * povm.pi0).trace().real();
  const double raw0b =
      (problem.rho2().matrix() * povm.pi0).trace().real();
  report.predicted_q = problem.eta1() * raw0 + problem.eta2() * raw0b;

  const std::array<double, 3> p1 = born_distribution(problem.rho1(), povm, "rho1");
  const std::array<double, 3> p2 = born_distribution(problem.rho2(), povm, "rho2");
  // Cumulative boundaries; a strict `<` comparison below makes zero-width
  // buckets unselectable.
  const double c1_0 = p1[0];
  const double c1_1 = p1[0] + p1[1];
  const double c2_0 = p2[0];
  const double c2_1 = p2[0] + p2[1];

  SplitMix64 rng(seed);
  for (long long shot = 0; shot < shots; ++shot) {
    const int state = rng.uniform() < problem.eta1() ? 1 : 2;
    const double u = rng.uniform();
    int outcome;
    if (state == 1) {
      outcome = u < c1_0 ? 0 : (u < c1_1 ? 1 : 2);
    } else {
      outcome = u < c2_0 ? 0 : (u < c2_1 ? 1 : 2);
    }
    ++report.counts[outcome];
    if (outcome != 0 && outcome != state) {
      ++report.error_count;
    }
  }
  report.empirical_q = static_cast<double>(report.counts[0]) / static_cast<double>(shots);
  return report;
}

}  // namespace usd
