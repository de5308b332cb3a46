#include "sabench/oracle.hpp"

#include <Eigen/LU>

#include "sabench/errors.hpp"

namespace sabench {

Eigen::VectorXd solve_kkt(const QuadraticProgram& qp) {
  const Eigen::Index n = qp.Q.rows();
  const Eigen::Index k = qp.C.rows();
  if (qp.Q.cols() != n || qp.linear_center.size() != n)
    throw invalid_input_error("QP objective dimensions disagree");
  if (k > 0 && qp.C.cols() != n)
    throw invalid_input_error("QP constraint matrix has wrong column count");
  if (qp.r.size() != k) throw invalid_input_error("QP right-hand side has wrong size");

  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + k, n + k);
  kkt.topLeftCorner(n, n) = qp.Q;
  if (k > 0) {
    kkt.bottomLeftCorner(k, n) = qp.C;
    kkt.topRightCorner(n, k) = qp.C.transpose();
  }
  Eigen::VectorXd rhs(n + k);
  rhs.head(n) = qp.Q * qp.linear_center;
  rhs.tail(k) = qp.r;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(kkt);
  if (lu.rcond() < 1e-14)
    throw numeric_degeneracy_error("KKT matrix is singular or nearly singular");
  return lu.solve(rhs).head(n);
}

QuadraticProgram encode_theorem1(const BenchmarkProblem& problem) {
  const auto& cw = problem.constraint;
  const std::size_t m = problem.bayes_estimates.size();
  Eigen::Index total = 0;
  for (const auto& area : problem.bayes_estimates) total += static_cast<Eigen::Index>(area.size());

  QuadraticProgram qp;
  qp.Q = Eigen::MatrixXd::Zero(total, total);
  qp.linear_center.resize(total);
  qp.C = Eigen::MatrixXd::Zero(1, total);
  qp.r = Eigen::VectorXd::Constant(1, cw.target);

  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index n = static_cast<Eigen::Index>(problem.bayes_estimates[i].size());
    Eigen::VectorXd w(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      w(j) = cw.unit_weights[i][j];
      qp.linear_center(offset + j) = problem.bayes_estimates[i][j];
      qp.Q(offset + j, offset + j) = problem.loss.unit_loss[i][j];
    }
    qp.Q.block(offset, offset, n, n) += problem.loss.area_loss[i] * w * w.transpose();
    qp.C.block(0, offset, 1, n) = cw.area_weights[i] * w.transpose();
    offset += n;
  }
  return qp;
}

QuadraticProgram encode_theorem3(const MultiBenchmarkProblem& problem) {
  const int d = problem.dim;
  const std::size_t m = problem.bayes_estimates.size();
  Eigen::Index total = 0;
  for (const auto& area : problem.bayes_estimates)
    total += static_cast<Eigen::Index>(area.size()) * d;

  QuadraticProgram qp;
  qp.Q = Eigen::MatrixXd::Zero(total, total);
  qp.linear_center.resize(total);
  qp.C = Eigen::MatrixXd::Zero(d, total);
  qp.r = problem.target;

  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index n = static_cast<Eigen::Index>(problem.bayes_estimates[i].size());
    // W_i = (W_i1, ..., W_in_i) as a d x (n d) horizontal block.
    Eigen::MatrixXd Wi(d, n * d);
    for (Eigen::Index j = 0; j < n; ++j) {
      Wi.block(0, j * d, d, d) = problem.W[i][j];
      qp.Q.block(offset + j * d, offset + j * d, d, d) = problem.Lambda[i][j];
      qp.linear_center.segment(offset + j * d, d) = problem.bayes_estimates[i][j];
    }
    qp.Q.block(offset, offset, n * d, n * d) += Wi.transpose() * problem.Psi[i] * Wi;
    qp.C.block(0, offset, d, n * d) = problem.Gamma[i] * Wi;
    offset += n * d;
  }
  return qp;
}

}  // namespace sabench
