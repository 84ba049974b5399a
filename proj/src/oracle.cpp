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
#include <sstream>
#include <vector>

#include "usd/optimizer.hpp"

namespace usd {

namespace {

// A sector of the coefficient search: basis vectors (columns of v_basis and
// w_basis) that overlap each other directly or transitively. Vectors in
// different sectors are orthogonal (up to the edge threshold), so the Pi0
// positivity constraint decomposes sector by sector.
struct Sector {
  CMat u;            // sector vectors expressed in an orthonormal basis of their span
  RVec weights;      // objective gain per unit coefficient
  int size() const { return static_cast<int>(u.cols()); }
};

constexpr double kEdgeThreshold = 1e-8;
constexpr double kKernelEig = 1e-12;

// Largest t with C - t y y^dagger >= 0, capped at 1. Zero when y meets the
// kernel of C; otherwise the Schur complement bound 1 / (y^dagger C^+ y).
double max_last_coefficient(const CMat &c, const CVec &y) {
  Eigen::SelfAdjointEigenSolver<CMat> es(c);
  const RVec lambda = es.eigenvalues();
  const CVec yt = es.eigenvectors().adjoint() * y;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) <= kKernelEig) {
      if (std::abs(yt(i)) > 1e-8) {
        return 0.0;
      }
    } else {
      acc += std::norm(yt(i)) / lambda(i);
    }
  }
  if (acc <= 0.0) {
    return 1.0;
  }
  return std::min(1.0, 1.0 / acc);
}

// Maximum of sum_p weights_p c_p over the feasible coefficient box of one
// sector: all but the last coefficient run over the grid, the last one is
// maximized analytically given the others.
double optimize_sector(const Sector &sector, int grid_density) {
  const int k = sector.size();
  const int m = static_cast<int>(sector.u.rows());
  if (k == 1) {
    // Single vector: the Pi0 block is 1 - c, so c = 1 is feasible and the
    // objective is increasing.
    return sector.weights(0);
  }

  const int gridded = k - 1;
  if (std::pow(static_cast<double>(grid_density), gridded) > 2e8) {
    std::ostringstream msg;
    msg << "oracle: grid volume " << grid_density << "^" << gridded
        << " exceeds the search budget";
    throw TooLarge(msg.str());
  }

  const double step = 1.0 / (grid_density - 1);
  std::vector<int> idx(gridded, 0);
  const CVec y = sector.u.col(k - 1);
  double best = 0.0;
  bool any_feasible = false;

  while (true) {
    CMat c_rest = CMat::Identity(m, m);
    double objective = 0.0;
    for (int p = 0; p < gridded; ++p) {
      const double cp = idx[p] * step;
      c_rest -= cp * sector.u.col(p) * sector.u.col(p).adjoint();
      objective += sector.weights(p) * cp;
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(c_rest, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() >= -kKernelEig) {
      const double t = max_last_coefficient(c_rest, y);
      objective += sector.weights(k - 1) * t;
      if (!any_feasible || objective > best) {
        best = objective;
        any_feasible = true;
      }
    }

    int p = 0;
    while (p < gridded && ++idx[p] == grid_density) {
      idx[p] = 0;
      ++p;
    }
    if (p == gridded) {
      break;
    }
  }
  if (!any_feasible) {
    // The all-zero coefficient point is always feasible, so this cannot
    // happen for a valid sector; guard anyway.
    throw Error("oracle: no feasible grid point found in a sector");
  }
  return best;
}

}  // namespace

double brute_force_oracle(const DiscriminationProblem &problem,
                          const SupportGeometry &geometry, int grid_density) {
  if (grid_density < 2) {
    throw ValidationError("oracle: grid_density must be at least 2");
  }
  const int d1 = geometry.d1_perp();
  const int d2 = geometry.d2_perp();
  const double eta1 = problem.eta1();
  const double eta2 = problem.eta2();

  if (d1 == 0 && d2 == 0) {
    return 1.0;
  }
  // One-sided cases are exact: the constraint is block <= I and the linear
  // objective is nondecreasing in the block, so the full identity is optimal.
  if (d1 == 0) {
    const CMat m2 = geometry.w_basis.adjoint() * problem.rho2().matrix() * geometry.w_basis;
    return 1.0 - eta2 * m2.trace().real();
  }
  if (d2 == 0) {
    const CMat m1 = geometry.v_basis.adjoint() * problem.rho1().matrix() * geometry.v_basis;
    return 1.0 - eta1 * m1.trace().real();
  }

  // With both sides present, restricting to diagonal coefficient blocks is
  // lossless only for 1x1 blocks or when the overlap structure holds.
  if (d1 > 1 || d2 > 1) {
    DiagonalStructure structure =
        has_diagonal_structure(geometry, problem.rho1(), problem.rho2());
    if (!structure.structured) {
      std::ostringstream msg;
      msg << "oracle: unstructured problem with " << d1 * d1 + d2 * d2
          << " free parameters (limit 4)";
      throw TooLarge(msg.str());
    }
    if (d1 + d2 > 4) {
      std::ostringstream msg;
      msg << "oracle: " << d1 + d2 << " free parameters after exploiting "
          << "structure (limit 4)";
      throw TooLarge(msg.str());
    }
  }

  // Per-coefficient objective weights and the dim-space vectors carrying them.
  const int total = d1 + d2;
  CMat vectors(problem.dim(), total);
  RVec weights(total);
  for (int i = 0; i < d1; ++i) {
    vectors.col(i) = geometry.v_basis.col(i);
    weights(i) =
        eta1 * (geometry.v_basis.col(i).adjoint() * problem.rho1().matrix() *
                geometry.v_basis.col(i))(0, 0).real();
  }
  for (int j = 0; j < d2; ++j) {
    vectors.col(d1 + j) = geometry.w_basis.col(j);
    weights(d1 + j) =
        eta2 * (geometry.w_basis.col(j).adjoint() * problem.rho2().matrix() *
                geometry.w_basis.col(j))(0, 0).real();
  }

  // Group the vectors into sectors: connected components of the overlap
  // graph between the v side and the w side.
  std::vector<int> component(total, -1);
  int n_components = 0;
  for (int seed = 0; seed < total; ++seed) {
    if (component[seed] >= 0) {
      continue;
    }
    std::vector<int> stack{seed};
    component[seed] = n_components;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      const bool node_is_v = node < d1;
      for (int other = 0; other < total; ++other) {
        if (component[other] >= 0 || (other < d1) == node_is_v) {
          continue;
        }
        const double overlap = std::abs(vectors.col(node).dot(vectors.col(other)));
        if (overlap > kEdgeThreshold) {
          component[other] = n_components;
          stack.push_back(other);
        }
      }
    }
    ++n_components;
  }

  double gain = 0.0;
  for (int c = 0; c < n_components; ++c) {
    std::vector<int> members;
    for (int p = 0; p < total; ++p) {
      if (component[p] == c) {
        members.push_back(p);
      }
    }
    CMat z(problem.dim(), members.size());
    Sector sector;
    sector.weights = RVec(members.size());
    for (size_t p = 0; p < members.size(); ++p) {
      z.col(static_cast<Eigen::Index>(p)) = vectors.col(members[p]);
      sector.weights(static_cast<Eigen::Index>(p)) = weights(members[p]);
    }
    // Express the sector vectors in an orthonormal basis of their span so the
    // Pi0 block is I - sum c_p u_p u_p^dagger on a small space.
    Eigen::ColPivHouseholderQR<CMat> qr(z);
    qr.setThreshold(1e-10);
    const int rank = static_cast<int>(qr.rank());
    CMat q = qr.householderQ();
    sector.u = q.leftCols(rank).adjoint() * z;
    gain += optimize_sector(sector, grid_density);
  }
  return 1.0 - gain;
}

}  // namespace usd
