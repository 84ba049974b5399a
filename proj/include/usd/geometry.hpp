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
#include <vector>

#include "usd/problem.hpp"
#include "usd/spectral.hpp"

namespace usd {

// Support projectors of the two states together with the orthonormal bases of
// the detection subspaces: v_basis spans the directions of supp(rho1) lying in
// ker(rho2) (columns, d1_perp of them) and w_basis the mirror image. These are
// the only directions an error-free detection operator may use.
struct SupportGeometry {
  CMat p1;        // projector onto supp(rho1)
  CMat p2;        // projector onto supp(rho2)
  CMat p1_perp;   // I - p2
  CMat p2_perp;   // I - p1
  CMat v_basis;   // dim x d1_perp, rho2 v_i = 0
  CMat w_basis;   // dim x d2_perp, rho1 w_j = 0
  double overlap12 = 0.0;  // Tr(P1 rho2)
  double overlap21 = 0.0;  // Tr(P2 rho1)

  int dim() const { return static_cast<int>(p1.rows()); }
  int d1_perp() const { return static_cast<int>(v_basis.cols()); }
  int d2_perp() const { return static_cast<int>(w_basis.cols()); }
};

// Projector onto the span of the eigenvectors with above-cutoff eigenvalues.
HermitianOperator support_projector(const DensityOperator &rho);

// Decomposes each support eigenvector |r_l> into P2|r_l> + |r_l_perp>,
// Gram-Schmidt orthonormalizes the perpendicular parts (one
// reorthogonalization pass, residuals below 1e-8 discarded), and mirrors the
// procedure for the second state. Empty bases are legal outputs.
SupportGeometry build_geometry(const DiscriminationProblem &problem);

// Result of the structure test: when every v_i overlaps exactly one support
// eigenvector r_l of rho1 (and likewise w_j / s_m), r_match[i] and s_match[j]
// hold the matched eigenvector indices.
struct DiagonalStructure {
  bool structured = false;
  std::vector<int> r_match;
  std::vector<int> s_match;
};

// Tests the overlap matrices |<v_i|r_l>| and |<w_j|s_m>| thresholded at 1e-9
// for a one-to-one assignment (greedy max-overlap, ties to the lowest index).
// The test is relative to the eigenbases stored in the density operators.
DiagonalStructure has_diagonal_structure(const SupportGeometry &geometry,
                                         const DensityOperator &rho1,
                                         const DensityOperator &rho2);

}  // namespace usd
