#ifndef SABENCH_BENCH_VAR_HPP
#define SABENCH_BENCH_VAR_HPP

#include <string>
#include <vector>

#include "sabench/types.hpp"

namespace sabench {

/// Per-area weighted variability targets. h_i is the wanted value of
/// sum_j w_ij (theta_ij - delta_i)^2; d_i is the plug-in spread of the Bayes
/// estimates, d_i = sum_j w_ij (bayes_ij - abar_i)^2.
struct VariabilityTargets {
  std::vector<double> h;
  std::vector<double> d;
};

/// d_i computed from a problem's Bayes estimates.
std::vector<double> bayes_spread(const BenchmarkProblem& problem);

/// Targets whose h_i is the exact posterior expectation of the weighted
/// spread, expanded through posterior moments:
///   h_i = sum_j w_ij [V(theta_ij) + (bayes_ij - abar_i)^2]
///         - 2 sum_j w_ij Cov(theta_ij, abar_iw) + V(abar_iw).
/// Needs within-area covariances.
VariabilityTargets default_variability_targets(const PosteriorSummary& posterior,
                                               const ConstraintWeights& constraint);

/// Two-stage benchmarking of the weighted mean plus a weighted-variability
/// constraint at the unit level. Only supported when xi_ij = w_ij:
///   delta_i  = abar_i + (p - tw) eta_i (1 + phi_i)^-1 / sum_k eta_k^2 (1 + phi_k)^-1
///   theta_ij = delta_i + sqrt(h_i / d_i) (bayes_ij - abar_i).
/// Areas with d_i = 0 and h_i = 0 get all units set to delta_i; d_i = 0 with
/// h_i > 0 has no solution and raises degenerate_spread_error.
BenchmarkSolution benchmark_mean_and_variability(const BenchmarkProblem& problem,
                                                 const VariabilityTargets& targets,
                                                 const std::string& scheme_tag = "bm2");

}  // namespace sabench

#endif
