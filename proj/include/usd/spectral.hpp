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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "usd/errors.hpp"

namespace usd {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Tolerances shared across the library. Values are part of the module
// contracts; see the README for the full table.
namespace tol {
inline constexpr double kHermiticity = 1e-10;      // relative to max |entry|
inline constexpr double kTrace = 1e-10;            // |Tr(rho) - 1|
inline constexpr double kPsdSlack = 1e-9;          // eigenvalue floor scale
inline constexpr double kRankCutoff = 1e-10;       // lambda < cutoff * lambda_max is zero
inline constexpr double kGramSchmidtDiscard = 1e-8;
inline constexpr double kCompleteness = 1e-9;      // |Pi0 + Pi1 + Pi2 - I|
inline constexpr double kNoErrorResidual = 1e-8;   // |rho1 Pi2|_F, |rho2 Pi1|_F
inline constexpr double kProjector = 1e-7;         // |P^2 - P|_F for kind tests
inline constexpr double kFidelityRoutes = 1e-9;    // two-route agreement
}  // namespace tol

// Compares a <= b up to an absolute tolerance scaled by max(1, |a|, |b|).
bool leq_tol(double a, double b, double eps = 1e-12);

// A validated dim x dim complex Hermitian matrix. Construction symmetrizes
// the entries once the Hermiticity invariant has been checked, so downstream
// code can rely on exact A = A^dagger.
class HermitianOperator {
 public:
  // Throws NonHermitianInput when an entry differs from the conjugate of its
  // transpose partner by more than 1e-10 relative to the largest entry, and
  // ValidationError for an empty matrix.
  explicit HermitianOperator(const CMat &entries);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMat &matrix() const { return mat_; }

 private:
  CMat mat_;
};

// Eigendecomposition of a Hermitian operator, eigenvalues descending and
// eigenvectors stored as orthonormal columns in matching order.
struct Eigensystem {
  RVec values;
  CMat vectors;
};

// Throws NonHermitianInput via the HermitianOperator constructor when given a
// raw matrix that fails the invariant. Reconstruction error is within 1e-9
// relative Frobenius norm.
Eigensystem eig_hermitian(const HermitianOperator &a);

// PSD square root. Eigenvalues in (-1e-9 * scale, 0) are clamped to zero;
// anything lower throws NotPositiveSemidefinite.
HermitianOperator sqrt_psd(const HermitianOperator &a);

// True iff the minimum eigenvalue is >= -slack * max(1, max |eigenvalue|).
bool is_psd(const HermitianOperator &a, double slack);

// A trace-one PSD operator with its cached eigensystem. The stored
// eigenvectors always form a complete orthonormal basis; the first `rank`
// of them carry the nonzero eigenvalues.
class DensityOperator {
 public:
  // Validates Hermiticity, unit trace, and positivity, then diagonalizes.
  static DensityOperator from_matrix(const CMat &entries);

  // Builds the operator from a given eigensystem without re-diagonalizing,
  // preserving the supplied eigenvectors (needed for families with degenerate
  // spectra, where the eigenbasis is a modelling choice). Missing kernel
  // directions are completed via QR. Vectors must be orthonormal within
  // 1e-10 per inner product; values must be >= -1e-9 and sum to 1 within
  // 1e-10. The (value, vector) pairs are stably sorted descending.
  static DensityOperator from_eigensystem(const RVec &values, const CMat &vectors);

  int dim() const { return op_.dim(); }
  const HermitianOperator &op() const { return op_; }
  const CMat &matrix() const { return op_.matrix(); }
  const RVec &eigenvalues() const { return eigs_.values; }
  const CMat &eigenvectors() const { return eigs_.vectors; }
  int rank() const { return rank_; }

  // Columns of the eigenvector matrix restricted to the support.
  CMat support_vectors() const { return eigs_.vectors.leftCols(rank_); }
  RVec support_values() const { return eigs_.values.head(rank_); }

 private:
  DensityOperator(HermitianOperator op, Eigensystem eigs, int rank);

  HermitianOperator op_;
  Eigensystem eigs_;
  int rank_;
};

// Both computation routes for the fidelity: the trace of the PSD square root
// of sqrt(rho2) rho1 sqrt(rho2), and the nuclear norm (singular value sum) of
// sqrt(rho1) sqrt(rho2). The two agree within 1e-9 for valid inputs.
struct FidelityDetail {
  double via_sqrt;
  double via_singular_values;
};

FidelityDetail fidelity_detail(const DensityOperator &rho1, const DensityOperator &rho2);

// Returns the trace-of-sqrt route after checking the two routes against each
// other; throws Error on disagreement beyond 1e-9 and DimensionMismatch for
// incompatible inputs.
double fidelity(const DensityOperator &rho1, const DensityOperator &rho2);

}  // namespace usd
