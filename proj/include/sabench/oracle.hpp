#ifndef SABENCH_ORACLE_HPP
#define SABENCH_ORACLE_HPP

#include <Eigen/Core>

#include "sabench/bench_multi.hpp"
#include "sabench/types.hpp"

namespace sabench {

/// Equality-constrained quadratic program
///   minimize (x - c)^T Q (x - c)  subject to  C x = r,
/// with Q symmetric positive definite and C of full row rank. Used as the
/// independent ground truth for the closed-form benchmarking solutions.
struct QuadraticProgram {
  Eigen::MatrixXd Q;
  Eigen::VectorXd linear_center;  // c
  Eigen::MatrixXd C;              // may have zero rows (unconstrained)
  Eigen::VectorXd r;

  double objective(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd dev = x - linear_center;
    return dev.dot(Q * dev);
  }
};

/// Solve via the saddle-point system [Q C^T; C 0][x; lambda] = [Qc; r].
/// Throws numeric_degeneracy_error when the KKT matrix is singular.
Eigen::VectorXd solve_kkt(const QuadraticProgram& qp);

/// Encode a scalar two-stage mean-benchmarking problem as a QP over the
/// stacked unit estimates: block-diagonal Q with blocks
/// Diag(xi_i) + phi_i w_i w_i^T and the single constraint
/// sum_i eta_i w_i^T x_i = p.
QuadraticProgram encode_theorem1(const BenchmarkProblem& problem);

/// Encode the multivariate problem: block-diagonal Q with per-area blocks
/// blockdiag(Lambda_ij) + W_i^T Psi_i W_i and constraint rows
/// [Gamma_1 W_1, ..., Gamma_m W_m] x = p.
QuadraticProgram encode_theorem3(const MultiBenchmarkProblem& problem);

}  // namespace sabench

#endif
