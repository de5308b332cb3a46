#ifndef SABENCH_BENCH_MULTI_HPP
#define SABENCH_BENCH_MULTI_HPP

#include <Eigen/Core>
#include <vector>

#include "sabench/types.hpp"

namespace sabench {

/// Multivariate two-stage benchmarking inputs. Per unit: a Bayes estimate in
/// R^dim, a constraint matrix W_ij, and an SPD loss matrix Lambda_ij. Per
/// area: a constraint matrix Gamma_i and an SPD loss matrix Psi_i. W and
/// Gamma are arbitrary square matrices; Lambda and Psi must be SPD.
struct MultiBenchmarkProblem {
  int dim = 1;
  std::vector<std::vector<Eigen::VectorXd>> bayes_estimates;
  std::vector<std::vector<Eigen::MatrixXd>> W;
  std::vector<Eigen::MatrixXd> Gamma;
  std::vector<std::vector<Eigen::MatrixXd>> Lambda;
  std::vector<Eigen::MatrixXd> Psi;
  Eigen::VectorXd target;
};

struct MultiBenchmarkSolution {
  std::vector<std::vector<Eigen::VectorXd>> unit_estimates;
  std::vector<Eigen::VectorXd> area_estimates;
};

/// Closed-form solution of the matrix-weighted problem:
///   theta_ij = bayes_ij + Lambda_ij^-1 W_ij^T s_i^-1 (Psi_i + s_i^-1)^-1
///              Gamma_i^T R^-1 (p - tw)
///   delta_i  = abar_i + (Psi_i + s_i^-1)^-1 Gamma_i^T R^-1 (p - tw)
/// with s_i = sum_j W_ij Lambda_ij^-1 W_ij^T and
/// R = sum_i Gamma_i (Psi_i + s_i^-1)^-1 Gamma_i^T. Singular s_i or R raises
/// numeric_degeneracy_error naming the offending area or the aggregate.
MultiBenchmarkSolution benchmark_mean_multi(const MultiBenchmarkProblem& problem);

}  // namespace sabench

#endif
