#ifndef SABENCH_BENCH_MEAN_HPP
#define SABENCH_BENCH_MEAN_HPP

#include <string>
#include <vector>

#include "sabench/types.hpp"

namespace sabench {

/// Quantities shared by the closed-form mean benchmarking solution:
///   s_i = sum_j w_ij^2 / xi_ij,
///   q   = sum_k eta_k^2 s_k / (1 + phi_k s_k),
///   theta_tilde_w = sum_i eta_i sum_j w_ij bayes_ij,
///   correction_scale = p - theta_tilde_w.
struct MeanBenchmarkIntermediates {
  std::vector<double> s;
  double q = 0.0;
  double theta_tilde_w = 0.0;
  double correction_scale = 0.0;
};

MeanBenchmarkIntermediates compute_mean_intermediates(const BenchmarkProblem& problem);

/// Closed-form two-stage mean benchmarking:
///   theta_ij = bayes_ij + (p - tw) eta_i (1 + phi_i s_i)^-1 (w_ij / xi_ij) / q
///   delta_i  = abar_i   + (p - tw) eta_i s_i (1 + phi_i s_i)^-1 / q.
/// Output satisfies sum_j w_ij theta_ij = delta_i and sum_i eta_i delta_i = p.
BenchmarkSolution benchmark_mean(const BenchmarkProblem& problem,
                                 const std::string& scheme_tag = "bm1");

/// Raked estimator computed directly from the raking formulas:
///   theta_ij = p bayes_ij / tw,  delta_i = p abar_i / tw.
/// Requires all Bayes estimates positive. Coincides with benchmark_mean under
/// the raked loss weights; both routes are kept separate on purpose.
BenchmarkSolution benchmark_raked(const BenchmarkProblem& problem,
                                  const std::string& scheme_tag = "raked");

/// Fill the posterior mean squared error fields:
///   unit PMSE = V(theta_ij|y) + (mean_ij - theta_ij)^2,
///   area PMSE = V(abar_i|y)   + (mean_area_i - delta_i)^2.
/// The posterior means act as the Bayes estimates in the squared adjustment.
BenchmarkSolution pmse(BenchmarkSolution solution, const PosteriorSummary& posterior);

/// Percent increase of posterior root MSE over the Bayes estimator's root
/// posterior variance, per area:
///   100 (sqrt(PMSE_i) - sqrt(V_i)) / sqrt(V_i).
/// Areas with zero posterior variance yield NaN (undefined).
std::vector<double> percent_prmse_increase(const BenchmarkSolution& solution,
                                           const PosteriorSummary& posterior);

}  // namespace sabench

#endif
