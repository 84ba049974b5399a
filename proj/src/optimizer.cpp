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

#include "usd/optimizer.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace usd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Real trace inner product of two Hermitian matrices.
double herm_inner(const CMat &x, const CMat &y) {
  return x.cwiseProduct(y.conjugate()).sum().real();
}

// Orthonormal basis of the real vector space of Hermitian d x d matrices
// under the trace inner product: diagonal units, then real and imaginary
// off-diagonal pairs scaled by 1/sqrt(2).
std::vector<CMat> hermitian_basis(int d) {
  std::vector<CMat> basis;
  basis.reserve(static_cast<size_t>(d) * d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    CMat e = CMat::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      CMat re = CMat::Zero(d, d);
      re(i, j) = inv_sqrt2;
      re(j, i) = inv_sqrt2;
      basis.push_back(re);
      CMat im = CMat::Zero(d, d);
      im(i, j) = Complex(0.0, inv_sqrt2);
      im(j, i) = Complex(0.0, -inv_sqrt2);
      basis.push_back(im);
    }
  }
  return basis;
}

// Cholesky factor of a Hermitian matrix, or nullopt when it is not strictly
// positive definite. Empty matrices count as positive definite.
std::optional<CMat> cholesky(const CMat &a) {
  if (a.rows() == 0) {
    return CMat(0, 0);
  }
  Eigen::LLT<CMat> llt(a);
  if (llt.info() != Eigen::Success) {
    return std::nullopt;
  }
  CMat l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (!(l(i, i).real() > 0.0)) {
      return std::nullopt;
    }
  }
  return l;
}

double logdet_from_cholesky(const CMat &l) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    s += std::log(l(i, i).real());
  }
  return 2.0 * s;
}

struct Iterate {
  CMat a;
  CMat b;
};

class BarrierSolver {
 public:
  BarrierSolver(const DiscriminationProblem &problem, const SupportGeometry &geometry,
                const OptimizeOptions &options)
      : geometry_(geometry),
        options_(options),
        dim_(problem.dim()),
        d1_(geometry.d1_perp()),
        d2_(geometry.d2_perp()),
        obj1_(problem.eta1() * (geometry.v_basis.adjoint() * problem.rho1().matrix() *
                                geometry.v_basis)),
        obj2_(problem.eta2() * (geometry.w_basis.adjoint() * problem.rho2().matrix() *
                                geometry.w_basis)),
        basis_a_(hermitian_basis(d1_)),
        basis_b_(hermitian_basis(d2_)),
        na_(static_cast<int>(basis_a_.size())),
        nb_(static_cast<int>(basis_b_.size())) {}

  // Runs the barrier schedule and returns the final strictly feasible
  // iterate. `iterations` accumulates Newton steps across stages.
  Iterate run(int &iterations, bool &converged) {
    Iterate x = initial_iterate();
    const double nu = d1_ + d2_ + dim_;
    const double mu_end =
        std::max(1e-12, std::min(1e-11, options_.tol / (10.0 * nu)));

    double mu = 0.25;
    double f_prev_stage = objective(x);
    while (true) {
      const bool final_stage = mu <= mu_end;
      const double target = final_stage ? 1e-14 : 0.1 * mu;
      const bool met_target = newton_stage(x, mu, target, iterations);
      const double f_now = objective(x);
      if (final_stage) {
        // Either the Newton decrement hit the target, or the stage stalled
        // with the objective no longer moving beyond the requested tolerance.
        converged = met_target || std::abs(f_now - f_prev_stage) < options_.tol;
        break;
      }
      f_prev_stage = f_now;
      mu = std::max(mu * 0.2, mu_end);
    }
    return x;
  }

  double objective(const Iterate &x) const {
    double f = 0.0;
    if (d1_ > 0) {
      f += herm_inner(x.a, obj1_);
    }
    if (d2_ > 0) {
      f += herm_inner(x.b, obj2_);
    }
    return f;
  }

  // Wraps the iterate into a result; shared by the success and
  // budget-exhausted paths.
  OptimizationResult package(const DiscriminationProblem &problem, const Iterate &x,
                             int iterations, bool converged) const {
    OptimizationResult result;
    result.povm = Povm::from_coefficients(geometry_, x.a, x.b);
    result.q_min = failure_probability(problem, result.povm);
    result.selective_failures = {
        (problem.rho1().matrix() * result.povm.pi0).trace().real(),
        (problem.rho2().matrix() * result.povm.pi0).trace().real()};
    result.iterations = iterations;
    result.converged = converged;
    result.measurement_kind = classify_measurement(result.povm);
    return result;
  }

 private:
  CMat pi0_of(const Iterate &x) const {
    CMat pi0 = CMat::Identity(dim_, dim_);
    if (d1_ > 0) {
      pi0 -= geometry_.v_basis * x.a * geometry_.v_basis.adjoint();
    }
    if (d2_ > 0) {
      pi0 -= geometry_.w_basis * x.b * geometry_.w_basis.adjoint();
    }
    return pi0;
  }

  // Barrier potential, -inf outside the strictly feasible region.
  double potential(const Iterate &x, double mu) const {
    auto la = cholesky(x.a);
    auto lb = cholesky(x.b);
    auto l0 = cholesky(pi0_of(x));
    if (!la || !lb || !l0) {
      return kNegInf;
    }
    return objective(x) + mu * (logdet_from_cholesky(*la) + logdet_from_cholesky(*lb) +
                                logdet_from_cholesky(*l0));
  }

  Iterate initial_iterate() const {
    for (int k = 1; k < 60; ++k) {
      const double c = std::pow(0.5, k);
      Iterate x{c * CMat::Identity(d1_, d1_), c * CMat::Identity(d2_, d2_)};
      if (cholesky(pi0_of(x))) {
        return x;
      }
    }
    throw Error("optimizer: could not find a strictly feasible start");
  }

  // Newton iterations for one barrier stage. Returns true when the stage
  // ended by meeting the decrement target (as opposed to a line-search
  // stall at numerical precision).
  bool newton_stage(Iterate &x, double mu, double target, int &iterations) {
    for (int step = 0; step < 200; ++step) {
      if (iterations >= options_.max_iter) {
        throw_budget(x, iterations);
      }

      auto la = cholesky(x.a);
      auto lb = cholesky(x.b);
      auto l0 = cholesky(pi0_of(x));
      if (!la || !lb || !l0) {
        throw Error("optimizer: iterate left the feasible region");
      }

      // Transformed quantities: with X = L L^dagger, the curvature terms
      // Tr(X^-1 Phi_p X^-1 Phi_q) become plain trace products of
      // L^-1 Phi L^-dagger, and X^-1 = (L^-1)^dagger L^-1.
      CMat la_inv(0, 0), lb_inv(0, 0), ainv(0, 0), binv(0, 0);
      if (d1_ > 0) {
        la_inv = la->triangularView<Eigen::Lower>().solve(CMat::Identity(d1_, d1_));
        ainv = la_inv.adjoint() * la_inv;
      }
      if (d2_ > 0) {
        lb_inv = lb->triangularView<Eigen::Lower>().solve(CMat::Identity(d2_, d2_));
        binv = lb_inv.adjoint() * lb_inv;
      }
      CMat xa(dim_, 0), xb(dim_, 0);
      CMat pi0inv_vv(0, 0), pi0inv_ww(0, 0);
      if (d1_ > 0) {
        xa = l0->triangularView<Eigen::Lower>().solve(geometry_.v_basis);
        pi0inv_vv = xa.adjoint() * xa;
      }
      if (d2_ > 0) {
        xb = l0->triangularView<Eigen::Lower>().solve(geometry_.w_basis);
        pi0inv_ww = xb.adjoint() * xb;
      }

      const int n = na_ + nb_;
      Eigen::VectorXd grad(n);
      std::vector<CMat> tilde_block;   // L^-1-transformed block basis
      std::vector<CMat> tilde_pi0;     // L0^-1-transformed lifted basis
      tilde_block.reserve(n);
      tilde_pi0.reserve(n);

      const CMat grad_a = d1_ > 0 ? CMat(obj1_ + mu * (ainv - pi0inv_vv)) : CMat(0, 0);
      const CMat grad_b = d2_ > 0 ? CMat(obj2_ + mu * (binv - pi0inv_ww)) : CMat(0, 0);
      for (int p = 0; p < na_; ++p) {
        grad(p) = herm_inner(basis_a_[p], grad_a);
        tilde_block.push_back(la_inv * basis_a_[p] * la_inv.adjoint());
        tilde_pi0.push_back(xa * basis_a_[p] * xa.adjoint());
      }
      for (int p = 0; p < nb_; ++p) {
        grad(na_ + p) = herm_inner(basis_b_[p], grad_b);
        tilde_block.push_back(lb_inv * basis_b_[p] * lb_inv.adjoint());
        tilde_pi0.push_back(xb * basis_b_[p] * xb.adjoint());
      }

      Eigen::MatrixXd neg_hessian(n, n);
      for (int p = 0; p < n; ++p) {
        for (int q = p; q < n; ++q) {
          double h = herm_inner(tilde_pi0[p], tilde_pi0[q]);
          const bool both_a = p < na_ && q < na_;
          const bool both_b = p >= na_ && q >= na_;
          if (both_a || both_b) {
            h += herm_inner(tilde_block[p], tilde_block[q]);
          }
          neg_hessian(p, q) = mu * h;
          neg_hessian(q, p) = mu * h;
        }
      }

      Eigen::LLT<Eigen::MatrixXd> hllt(neg_hessian);
      if (hllt.info() != Eigen::Success) {
        // Rounding can nudge the Gram matrix indefinite near convergence; a
        // small ridge restores solvability without changing the optimum.
        neg_hessian.diagonal().array() += 1e-12 * (1.0 + neg_hessian.trace());
        hllt.compute(neg_hessian);
        if (hllt.info() != Eigen::Success) {
          return false;
        }
      }
      const Eigen::VectorXd delta = hllt.solve(grad);
      const double decrement = std::max(grad.dot(delta), 0.0);
      if (decrement <= target) {
        return true;
      }

      // Map the coefficient step back to matrix space.
      CMat da = CMat::Zero(d1_, d1_);
      CMat db = CMat::Zero(d2_, d2_);
      for (int p = 0; p < na_; ++p) {
        da += delta(p) * basis_a_[p];
      }
      for (int p = 0; p < nb_; ++p) {
        db += delta(na_ + p) * basis_b_[p];
      }

      const double phi0 = potential(x, mu);
      double t = 1.0;
      bool accepted = false;
      for (int halving = 0; halving < 60; ++halving) {
        Iterate cand{x.a + t * da, x.b + t * db};
        const double phi = potential(cand, mu);
        if (phi >= phi0 + 0.25 * t * decrement) {
          x = cand;
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      ++iterations;
      if (!accepted) {
        return false;
      }
    }
    return false;
  }

  [[noreturn]] void throw_budget(const Iterate &x, int iterations) {
    std::ostringstream msg;
    msg << "optimizer: iteration budget " << options_.max_iter
        << " exhausted before convergence";
    const DiscriminationProblem *problem = budget_problem_;
    if (problem != nullptr) {
      throw NotConverged(msg.str(), package(*problem, x, iterations, false));
    }
    throw Error(msg.str());
  }

 public:
  // The problem pointer used only to package the best-so-far result when the
  // iteration budget runs out.
  void set_budget_problem(const DiscriminationProblem *problem) {
    budget_problem_ = problem;
  }

 private:
  const SupportGeometry &geometry_;
  OptimizeOptions options_;
  int dim_;
  int d1_;
  int d2_;
  CMat obj1_;
  CMat obj2_;
  std::vector<CMat> basis_a_;
  std::vector<CMat> basis_b_;
  int na_;
  int nb_;
  const DiscriminationProblem *budget_problem_ = nullptr;
};

OptimizationResult solve_direct(const DiscriminationProblem &problem,
                                const SupportGeometry &geometry, const CMat &alpha,
                                const CMat &beta) {
  OptimizationResult result;
  result.povm = Povm::from_coefficients(geometry, alpha, beta);
  result.q_min = failure_probability(problem, result.povm);
  result.selective_failures = {
      (problem.rho1().matrix() * result.povm.pi0).trace().real(),
      (problem.rho2().matrix() * result.povm.pi0).trace().real()};
  result.iterations = 0;
  result.converged = true;
  result.measurement_kind = classify_measurement(result.povm);
  return result;
}

}  // namespace

OptimizationResult optimize(const DiscriminationProblem &problem,
                            const SupportGeometry &geometry,
                            const OptimizeOptions &options) {
  const int d1 = geometry.d1_perp();
  const int d2 = geometry.d2_perp();

  // Coinciding supports: no error-free detection directions exist and the
  // measurement is always inconclusive.
  if (d1 == 0 && d2 == 0) {
    return solve_direct(problem, geometry, CMat(0, 0), CMat(0, 0));
  }
  // Boundary priors: the certain state is detected with the full projector
  // onto its complement basis; no iteration needed.
  if (problem.eta1() <= 0.0) {
    return solve_direct(problem, geometry, CMat::Zero(d1, d1), CMat::Identity(d2, d2));
  }
  if (problem.eta1() >= 1.0) {
    return solve_direct(problem, geometry, CMat::Identity(d1, d1), CMat::Zero(d2, d2));
  }

  BarrierSolver solver(problem, geometry, options);
  solver.set_budget_problem(&problem);
  int iterations = 0;
  bool converged = false;
  Iterate x = solver.run(iterations, converged);
  return solver.package(problem, x, iterations, converged);
}

}  // namespace usd
