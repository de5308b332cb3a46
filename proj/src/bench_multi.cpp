#include "sabench/bench_multi.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "sabench/errors.hpp"

namespace sabench {

namespace {

constexpr double kRcondFloor = 1e-12;

void validate(const MultiBenchmarkProblem& p) {
  const int d = p.dim;
  if (d < 1) throw invalid_input_error("dim must be positive");
  const std::size_t m = p.bayes_estimates.size();
  if (m == 0) throw invalid_input_error("problem has no areas");
  if (p.W.size() != m || p.Gamma.size() != m || p.Lambda.size() != m || p.Psi.size() != m)
    throw invalid_input_error("per-area containers disagree on the number of areas");
  if (p.target.size() != d) throw invalid_input_error("target has wrong dimension");

  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n = p.bayes_estimates[i].size();
    if (n == 0) throw invalid_input_error("area " + std::to_string(i + 1) + " has no units");
    if (p.W[i].size() != n || p.Lambda[i].size() != n)
      throw invalid_input_error("per-unit containers of area " + std::to_string(i + 1) +
                                " disagree");
    if (p.Gamma[i].rows() != d || p.Gamma[i].cols() != d)
      throw invalid_input_error("Gamma of area " + std::to_string(i + 1) + " is not dim x dim");
    if (p.Psi[i].rows() != d || p.Psi[i].cols() != d)
      throw invalid_input_error("Psi of area " + std::to_string(i + 1) + " is not dim x dim");
    for (std::size_t j = 0; j < n; ++j) {
      if (p.bayes_estimates[i][j].size() != d)
        throw invalid_input_error("Bayes estimate dimension mismatch in area " +
                                  std::to_string(i + 1));
      if (p.W[i][j].rows() != d || p.W[i][j].cols() != d ||
          p.Lambda[i][j].rows() != d || p.Lambda[i][j].cols() != d)
        throw invalid_input_error("matrix dimension mismatch in area " +
                                  std::to_string(i + 1));
    }
  }
}

Eigen::LLT<Eigen::MatrixXd> spd_factor(const Eigen::MatrixXd& a, const std::string& what) {
  if (!a.isApprox(a.transpose(), 1e-10))
    throw invalid_input_error(what + " is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success)
    throw invalid_input_error(what + " is not positive definite");
  return llt;
}

}  // namespace

MultiBenchmarkSolution benchmark_mean_multi(const MultiBenchmarkProblem& p) {
  validate(p);
  const int d = p.dim;
  const std::size_t m = p.bayes_estimates.size();

  // Per-area pieces: abar_i = sum_j W_ij bayes_ij, s_i = sum_j W_ij L_ij^-1 W_ij^T,
  // M_i = Psi_i + s_i^-1, and the aggregate R = sum_i Gamma_i M_i^-1 Gamma_i^T.
  std::vector<Eigen::VectorXd> abar(m);
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> s_lu(m);
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> m_lu(m);
  Eigen::VectorXd tw = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(d, d);

  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n = p.bayes_estimates[i].size();
    abar[i] = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) {
      const std::string tag = "area " + std::to_string(i + 1) + " unit " + std::to_string(j + 1);
      auto llt = spd_factor(p.Lambda[i][j], "Lambda of " + tag);
      s.noalias() += p.W[i][j] * llt.solve(p.W[i][j].transpose());
      abar[i].noalias() += p.W[i][j] * p.bayes_estimates[i][j];
    }
    spd_factor(p.Psi[i], "Psi of area " + std::to_string(i + 1));

    s_lu[i].compute(s);
    if (s_lu[i].rcond() < kRcondFloor)
      throw numeric_degeneracy_error("s matrix of area " + std::to_string(i + 1) +
                                     " is singular or nearly singular");
    const Eigen::MatrixXd s_inv = s_lu[i].solve(Eigen::MatrixXd::Identity(d, d));
    m_lu[i].compute(p.Psi[i] + s_inv);
    if (m_lu[i].rcond() < kRcondFloor)
      throw numeric_degeneracy_error("Psi + s^-1 of area " + std::to_string(i + 1) +
                                     " is singular or nearly singular");
    R.noalias() += p.Gamma[i] * m_lu[i].solve(p.Gamma[i].transpose());
    tw.noalias() += p.Gamma[i] * abar[i];
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> r_lu(R);
  if (r_lu.rcond() < kRcondFloor)
    throw numeric_degeneracy_error("aggregate R matrix is singular or nearly singular");
  const Eigen::VectorXd rv = r_lu.solve(p.target - tw);

  MultiBenchmarkSolution out;
  out.unit_estimates.resize(m);
  out.area_estimates.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::VectorXd area_corr = m_lu[i].solve(p.Gamma[i].transpose() * rv);
    out.area_estimates[i] = abar[i] + area_corr;

    const Eigen::VectorXd t = s_lu[i].solve(area_corr);
    const std::size_t n = p.bayes_estimates[i].size();
    out.unit_estimates[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      Eigen::LLT<Eigen::MatrixXd> llt(p.Lambda[i][j]);
      out.unit_estimates[i][j] =
          p.bayes_estimates[i][j] + llt.solve(p.W[i][j].transpose() * t);
    }
  }
  return out;
}

}  // namespace sabench
