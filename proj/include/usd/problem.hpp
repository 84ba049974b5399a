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

#include "usd/spectral.hpp"

namespace usd {

// Two hypotheses with prior probabilities. eta2 is always 1 - eta1.
class DiscriminationProblem {
 public:
  DiscriminationProblem(DensityOperator rho1, DensityOperator rho2, double eta1)
      : rho1_(std::move(rho1)), rho2_(std::move(rho2)), eta1_(eta1) {
    if (rho1_.dim() != rho2_.dim()) {
      throw DimensionMismatch("problem: states have different dimensions");
    }
    if (!(eta1 >= 0.0 && eta1 <= 1.0)) {
      throw ValidationError("problem: eta1 must lie in [0, 1]");
    }
  }

  const DensityOperator &rho1() const { return rho1_; }
  const DensityOperator &rho2() const { return rho2_; }
  double eta1() const { return eta1_; }
  double eta2() const { return 1.0 - eta1_; }
  int dim() const { return rho1_.dim(); }

 private:
  DensityOperator rho1_;
  DensityOperator rho2_;
  double eta1_;
};

}  // namespace usd
