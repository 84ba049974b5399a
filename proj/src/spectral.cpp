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

#include "usd/spectral.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace usd {

bool leq_tol(double a, double b, double eps) {
  return a <= b + eps * std::max({1.0, std::abs(a), std::abs(b)});
}

HermitianOperator::HermitianOperator(const CMat &entries) {
  if (entries.rows() < 1 || entries.rows() != entries.cols()) {
    std::ostringstream msg;
    msg << "operator must be square with dim >= 1, got " << entries.rows()
        << "x" << entries.cols();
    throw ValidationError(msg.str());
  }
  const double scale = entries.cwiseAbs().maxCoeff();
  const double threshold = tol::kHermiticity * scale;
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = i; j < entries.cols(); ++j) {
      const double dev = std::abs(entries(i, j) - std::conj(entries(j, i)));
      if (dev > threshold) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << ") deviates from Hermiticity by "
            << dev << " (allowed " << threshold << ")";
        throw NonHermitianInput(msg.str());
      }
    }
  }
  mat_ = 0.5 * (entries + entries.adjoint());
}

Eigensystem eig_hermitian(const HermitianOperator &a) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(a.matrix());
  // Eigen sorts ascending; the contract wants descending.
  Eigensystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

HermitianOperator sqrt_psd(const HermitianOperator &a) {
  Eigensystem es = eig_hermitian(a);
  const double scale = es.values.cwiseAbs().maxCoeff();
  RVec roots(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    double lambda = es.values(k);
    if (lambda < -tol::kPsdSlack * scale) {
      std::ostringstream msg;
      msg << "eigenvalue " << lambda << " below the PSD slack "
          << -tol::kPsdSlack * scale;
      throw NotPositiveSemidefinite(msg.str());
    }
    roots(k) = std::sqrt(std::max(lambda, 0.0));
  }
  CMat result = es.vectors * roots.asDiagonal() * es.vectors.adjoint();
  return HermitianOperator(result);
}

bool is_psd(const HermitianOperator &a, double slack) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(a.matrix(), Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  return lo >= -slack * scale;
}

DensityOperator::DensityOperator(HermitianOperator op, Eigensystem eigs, int rank)
    : op_(std::move(op)), eigs_(std::move(eigs)), rank_(rank) {}

namespace {

// Shared tail of both constructors: positivity / trace checks on the spectrum
// and the rank cutoff, with eigenvalues below the cutoff zeroed exactly.
int check_spectrum_and_rank(RVec &values, const char *what) {
  const double lo = values.minCoeff();
  if (lo < -tol::kPsdSlack) {
    std::ostringstream msg;
    msg << what << ": eigenvalue " << lo << " below -1e-9";
    throw NotPositiveSemidefinite(msg.str());
  }
  const double trace = values.sum();
  if (std::abs(trace - 1.0) > tol::kTrace) {
    std::ostringstream msg;
    msg << what << ": trace = " << trace << ", expected 1 within 1e-10";
    throw ValidationError(msg.str());
  }
  const double cutoff = tol::kRankCutoff * values.maxCoeff();
  int rank = 0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) >= cutoff && values(k) > 0.0) {
      ++rank;
    } else {
      values(k) = 0.0;
    }
  }
  return rank;
}

}  // namespace

DensityOperator DensityOperator::from_matrix(const CMat &entries) {
  HermitianOperator op(entries);
  Eigensystem es = eig_hermitian(op);
  int rank = check_spectrum_and_rank(es.values, "density operator");
  return DensityOperator(std::move(op), std::move(es), rank);
}

DensityOperator DensityOperator::from_eigensystem(const RVec &values, const CMat &vectors) {
  const Eigen::Index d = vectors.rows();
  const Eigen::Index k = vectors.cols();
  if (d < 1 || k < 1 || k > d || values.size() != k) {
    throw ValidationError("eigensystem: need 1 <= #values = #vectors <= dim");
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      const double dev = std::abs(vectors.col(i).dot(vectors.col(j)) - Complex(expected));
      if (dev > tol::kHermiticity) {
        std::ostringstream msg;
        msg << "eigensystem: vectors " << i << "," << j
            << " not orthonormal (deviation " << dev << ")";
        throw ValidationError(msg.str());
      }
    }
  }

  // Stable descending sort keeps the caller's ordering inside degenerate
  // eigenspaces; that ordering is meaningful for the analytic families.
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values(a) > values(b); });

  Eigensystem es;
  es.values = RVec::Zero(d);
  es.vectors = CMat::Zero(d, d);
  for (Eigen::Index i = 0; i < k; ++i) {
    es.values(i) = std::max(values(order[i]), 0.0);
    if (values(order[i]) < -tol::kPsdSlack) {
      std::ostringstream msg;
      msg << "eigensystem: eigenvalue " << values(order[i]) << " below -1e-9";
      throw NotPositiveSemidefinite(msg.str());
    }
    es.vectors.col(i) = vectors.col(order[i]);
  }
  if (k < d) {
    // Complete the kernel with an orthonormal basis of the orthogonal
    // complement; the given vectors themselves are left untouched.
    Eigen::HouseholderQR<CMat> qr(es.vectors.leftCols(k));
    CMat q = qr.householderQ();
    es.vectors.rightCols(d - k) = q.rightCols(d - k);
  }

  int rank = check_spectrum_and_rank(es.values, "density operator");
  CMat m = es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
  return DensityOperator(HermitianOperator(m), std::move(es), rank);
}

namespace {

// Square root of a density operator from its cached, rank-cleaned
// eigensystem. Re-diagonalizing the reconstructed matrix would revive
// eigenvalue dust on the kernel, and sqrt turns dust of order eps into
// matrix errors of order sqrt(eps) that both fidelity routes inherit.
CMat support_sqrt(const DensityOperator &rho) {
  const RVec roots = rho.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return rho.eigenvectors() * roots.asDiagonal() * rho.eigenvectors().adjoint();
}

}  // namespace

FidelityDetail fidelity_detail(const DensityOperator &rho1, const DensityOperator &rho2) {
  if (rho1.dim() != rho2.dim()) {
    std::ostringstream msg;
    msg << "fidelity: dimensions differ (" << rho1.dim() << " vs " << rho2.dim() << ")";
    throw DimensionMismatch(msg.str());
  }
  const CMat s2 = support_sqrt(rho2);
  const CMat inner = s2 * rho1.matrix() * s2;
  Eigensystem es = eig_hermitian(HermitianOperator(inner));
  // Rank-deficient products have exact-zero eigenvalues that come out of the
  // solver as noise of order eps * lambda_max; the square root would amplify
  // each to ~1e-8 in the trace, so everything below a relative floor well
  // under any genuine eigenvalue is treated as zero.
  const double dust = 1e-13 * std::max(es.values.cwiseAbs().maxCoeff(), 0.0);
  double via_sqrt = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > dust) {
      via_sqrt += std::sqrt(es.values(i));
    }
  }

  // Max over unitaries of |Tr(U sqrt(rho1) sqrt(rho2))| is the nuclear norm.
  const CMat s1 = support_sqrt(rho1);
  Eigen::JacobiSVD<CMat> svd(s1 * s2);
  const double via_sv = svd.singularValues().sum();
  return {via_sqrt, via_sv};
}

double fidelity(const DensityOperator &rho1, const DensityOperator &rho2) {
  FidelityDetail detail = fidelity_detail(rho1, rho2);
  if (std::abs(detail.via_sqrt - detail.via_singular_values) > tol::kFidelityRoutes) {
    std::ostringstream msg;
    msg << "fidelity routes disagree: " << detail.via_sqrt << " vs "
        << detail.via_singular_values;
    throw Error(msg.str());
  }
  return detail.via_sqrt;
}

}  // namespace usd
