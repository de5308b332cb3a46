#include "sabench/bench_var.hpp"

#include <cmath>

#include "sabench/core.hpp"
#include "sabench/errors.hpp"

namespace sabench {

namespace {

constexpr double kLossEqualsWeightTol = 1e-12;

void require_unit_loss_equals_weights(const BenchmarkProblem& problem) {
  for (std::size_t i = 0; i < problem.loss.unit_loss.size(); ++i)
    for (std::size_t j = 0; j < problem.loss.unit_loss[i].size(); ++j)
      if (std::abs(problem.loss.unit_loss[i][j] - problem.constraint.unit_weights[i][j]) >
          kLossEqualsWeightTol)
        throw unsupported_configuration_error(
            "variability benchmarking requires xi_ij = w_ij; area " + std::to_string(i + 1) +
            " unit " + std::to_string(j + 1) + " differs");
}

}  // namespace

std::vector<double> bayes_spread(const BenchmarkProblem& problem) {
  const auto abar = weighted_area_means(problem.bayes_estimates, problem.constraint);
  std::vector<double> d(problem.bayes_estimates.size(), 0.0);
  for (std::size_t i = 0; i < problem.bayes_estimates.size(); ++i)
    for (std::size_t j = 0; j < problem.bayes_estimates[i].size(); ++j) {
      const double dev = problem.bayes_estimates[i][j] - abar[i];
      d[i] += problem.constraint.unit_weights[i][j] * dev * dev;
    }
  return d;
}

VariabilityTargets default_variability_targets(const PosteriorSummary& posterior,
                                               const ConstraintWeights& constraint) {
  const std::size_t m = constraint.unit_weights.size();
  if (posterior.within_area_cov.size() != m)
    throw missing_input_error("posterior summary lacks within-area covariances");

  VariabilityTargets out;
  out.h.resize(m, 0.0);
  out.d.resize(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& w = constraint.unit_weights[i];
    const std::size_t n = w.size();
    const auto& cov = posterior.within_area_cov[i];
    if (static_cast<std::size_t>(cov.rows()) != n ||
        static_cast<std::size_t>(cov.cols()) != n)
      throw missing_input_error("within-area covariance of area " + std::to_string(i + 1) +
                                " has wrong dimensions");

    double h = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dev = posterior.mean_theta[i][j] - posterior.mean_area[i];
      h += w[j] * (posterior.var_theta[i][j] + dev * dev);
      out.d[i] += w[j] * dev * dev;

      double cov_with_mean = 0.0;  // Cov(theta_ij, abar_iw | y)
      for (std::size_t k = 0; k < n; ++k) cov_with_mean += w[k] * cov(j, k);
      h -= 2.0 * w[j] * cov_with_mean;
    }
    h += posterior.var_area[i];
    out.h[i] = h;
  }
  return out;
}

BenchmarkSolution benchmark_mean_and_variability(const BenchmarkProblem& problem,
                                                 const VariabilityTargets& targets,
                                                 const std::string& scheme_tag) {
  BenchmarkProblem p = problem;
  renormalize_weights(p.constraint);
  {
    auto violations = validate_problem(p);
    if (!violations.empty())
      throw invalid_input_error("invalid benchmark problem: " + violations.front());
  }
  require_unit_loss_equals_weights(p);

  const std::size_t m = p.bayes_estimates.size();
  if (targets.h.size() != m)
    throw invalid_input_error("variability targets do not cover every area");
  for (double h : targets.h)
    if (!(h >= 0.0) || !std::isfinite(h))
      throw invalid_input_error("variability targets must be finite and nonnegative");

  const auto& cw = p.constraint;
  const auto abar = weighted_area_means(p.bayes_estimates, cw);
  const double tw = weighted_grand_mean(p.bayes_estimates, cw);
  const auto d = bayes_spread(p);

  // With xi = w every s_i is 1, so the area estimates reduce to the
  // mean-benchmarking formula with shrink factors (1 + phi_i)^-1.
  double q = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    q += cw.area_weights[i] * cw.area_weights[i] / (1.0 + p.loss.area_loss[i]);
  if (!(q > 0.0) || !std::isfinite(q))
    throw numeric_degeneracy_error("degenerate benchmarking system: q = " +
                                   std::to_string(q));
  const double scale = (cw.target - tw) / q;

  BenchmarkSolution out;
  out.scheme_tag = scheme_tag;
  out.unit_estimates.resize(m);
  out.area_estimates.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double g_i = scale * cw.area_weights[i] / (1.0 + p.loss.area_loss[i]);
    const double delta = abar[i] + g_i;
    out.area_estimates[i] = delta;

    const std::size_t n = p.bayes_estimates[i].size();
    out.unit_estimates[i].resize(n);
    if (d[i] > 0.0) {
      const double c = std::sqrt(targets.h[i] / d[i]);
      for (std::size_t j = 0; j < n; ++j)
        out.unit_estimates[i][j] = delta + c * (p.bayes_estimates[i][j] - abar[i]);
    } else if (targets.h[i] == 0.0) {
      for (std::size_t j = 0; j < n; ++j) out.unit_estimates[i][j] = delta;
    } else {
      throw degenerate_spread_error(
          "area " + std::to_string(i + 1) +
          " has zero Bayes spread; no scaling reaches h = " + std::to_string(targets.h[i]));
    }
  }
  return out;
}

}  // namespace sabench
