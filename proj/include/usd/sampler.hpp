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

#include <array>
#include <cstdint>
#include <string>

#include "usd/povm.hpp"
#include "usd/problem.hpp"

namespace usd {

// Outcome tallies from a simulated discrimination experiment.  Outcome 0 is
// the inconclusive result, outcomes 1 and 2 are the conclusive
// identifications.
struct SampleReport {
  long long shots = 0;
  std::array<long long, 3> counts{{0, 0, 0}};
  double empirical_q = 0.0;
  double predicted_q = 0.0;
  // Conclusive outcomes that named the wrong state.  Zero for any
  // measurement that satisfies the no-error constraints.
  long long error_count = 0;
  std::uint64_t seed = 0;
  std::string rng = "splitmix64";
};

// Draws `shots` independent experiments: a state is picked with probabilities
// (eta1, eta2), then a measurement outcome is drawn from the Born
// distribution of the chosen state.  Fully deterministic for a fixed seed.
SampleReport sample(const DiscriminationProblem &problem, const Povm &povm,
                    long long shots, std::uint64_t seed);

}  // namespace usd
