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

#include "usd/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace usd {

HermitianOperator support_projector(const DensityOperator &rho) {
  const CMat cols = rho.support_vectors();
  CMat p = cols * cols.adjoint();
  return HermitianOperator(p);
}

namespace {

// Orthonormalizes the perpendicular components of the support vectors of
// `rho_a` against the support of `rho_b`. Modified Gram-Schmidt with one
// reorthogonalization pass; vectors whose residual drops below the discard
// threshold are dependent on earlier ones (or live inside supp(rho_b)) and
// are skipped.
CMat complement_basis(const DensityOperator &rho_a, const CMat &p_b) {
  const int dim = rho_a.dim();
  const CMat support = rho_a.support_vectors();
  std::vector<CVec> kept;
  for (Eigen::Index l = 0; l < support.cols(); ++l) {
    CVec u = support.col(l) - p_b * support.col(l);
    for (int pass = 0; pass < 2; ++pass) {
      for (const CVec &q : kept) {
        u -= q * q.dot(u);
      }
    }
    const double norm = u.norm();
    if (norm >= tol::kGramSchmidtDiscard) {
      kept.push_back(u / norm);
    }
  }
  CMat basis(dim, static_cast<Eigen::Index>(kept.size()));
  for (size_t i = 0; i < kept.size(); ++i) {
    basis.col(static_cast<Eigen::Index>(i)) = kept[i];
  }
  return basis;
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

SupportGeometry build_geometry(const DiscriminationProblem &problem) {
  const DensityOperator &rho1 = problem.rho1();
  const DensityOperator &rho2 = problem.rho2();
  const int dim = problem.dim();

  SupportGeometry g;
  g.p1 = support_projector(rho1).matrix();
  g.p2 = support_projector(rho2).matrix();
  g.p1_perp = CMat::Identity(dim, dim) - g.p2;
  g.p2_perp = CMat::Identity(dim, dim) - g.p1;
  g.v_basis = complement_basis(rho1, g.p2);
  g.w_basis = complement_basis(rho2, g.p1);
  g.overlap12 = clamp01((g.p1 * rho2.matrix()).trace().real());
  g.overlap21 = clamp01((g.p2 * rho1.matrix()).trace().real());
  return g;
}

namespace {

// One side of the structure test. `basis` holds the complement vectors as
// columns, `support` the state's support eigenvectors. Returns the matched
// eigenvector indices, or nullopt when some row does not single out exactly
// one above-threshold overlap or two rows compete for the same column.
std::optional<std::vector<int>> match_side(const CMat &basis, const CMat &support) {
  constexpr double kThreshold = 1e-9;
  const int rows = static_cast<int>(basis.cols());
  const int cols = static_cast<int>(support.cols());
  std::vector<int> match(rows, -1);
  std::vector<bool> taken(cols, false);

  // Greedy max-overlap assignment, ties broken by the lowest column index.
  for (int i = 0; i < rows; ++i) {
    int best = -1;
    double best_overlap = 0.0;
    int above = 0;
    for (int l = 0; l < cols; ++l) {
      const double overlap = std::abs(basis.col(i).dot(support.col(l)));
      if (overlap > kThreshold) {
        ++above;
        if (overlap > best_overlap) {
          best_overlap = overlap;
          best = l;
        }
      }
    }
    if (above != 1 || taken[best]) {
      return std::nullopt;
    }
    taken[best] = true;
    match[i] = best;
  }
  return match;
}

}  // namespace

DiagonalStructure has_diagonal_structure(const SupportGeometry &geometry,
                                         const DensityOperator &rho1,
                                         const DensityOperator &rho2) {
  DiagonalStructure out;
  auto r_match = match_side(geometry.v_basis, rho1.support_vectors());
  auto s_match = match_side(geometry.w_basis, rho2.support_vectors());
  if (r_match && s_match) {
    out.structured = true;
    out.r_match = std::move(*r_match);
    out.s_match = std::move(*s_match);
  }
  return out;
}

}  // namespace usd
