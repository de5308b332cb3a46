#include "sabench/bench_mean.hpp"

#include <cmath>
#include <limits>

#include "sabench/core.hpp"
#include "sabench/errors.hpp"

namespace sabench {

namespace {

void require_valid(const BenchmarkProblem& problem) {
  auto violations = validate_problem(problem);
  if (!violations.empty()) {
    std::string msg = "invalid benchmark problem:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw invalid_input_error(msg);
  }
}

// Copy of the problem with weight drift <= 1e-6 repaired so the constraint
// identities hold at full precision.
BenchmarkProblem prepared(const BenchmarkProblem& problem) {
  BenchmarkProblem p = problem;
  renormalize_weights(p.constraint);
  return p;
}

}  // namespace

MeanBenchmarkIntermediates compute_mean_intermediates(const BenchmarkProblem& problem) {
  const auto& cw = problem.constraint;
  const std::size_t m = problem.bayes_estimates.size();

  MeanBenchmarkIntermediates out;
  out.s.resize(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < problem.bayes_estimates[i].size(); ++j) {
      const double w = cw.unit_weights[i][j];
      out.s[i] += w * w / problem.loss.unit_loss[i][j];
    }
    out.q += cw.area_weights[i] * cw.area_weights[i] * out.s[i] /
             (1.0 + problem.loss.area_loss[i] * out.s[i]);
  }
  out.theta_tilde_w = weighted_grand_mean(problem.bayes_estimates, cw);
  out.correction_scale = cw.target - out.theta_tilde_w;
  return out;
}

BenchmarkSolution benchmark_mean(const BenchmarkProblem& problem,
                                 const std::string& scheme_tag) {
  const BenchmarkProblem p = prepared(problem);
  require_valid(p);

  const auto inter = compute_mean_intermediates(p);
  if (!(inter.q > 0.0) || !std::isfinite(inter.q) || !std::isfinite(inter.correction_scale))
    throw numeric_degeneracy_error("degenerate benchmarking system: q = " +
                                   std::to_string(inter.q));

  const auto& cw = p.constraint;
  const std::size_t m = p.bayes_estimates.size();
  const double scale = inter.correction_scale / inter.q;

  BenchmarkSolution out;
  out.scheme_tag = scheme_tag;
  out.unit_estimates.resize(m);
  out.area_estimates.resize(m);
  const auto abar = weighted_area_means(p.bayes_estimates, cw);

  for (std::size_t i = 0; i < m; ++i) {
    const double eta = cw.area_weights[i];
    const double shrink = 1.0 / (1.0 + p.loss.area_loss[i] * inter.s[i]);
    const std::size_t n = p.bayes_estimates[i].size();
    out.unit_estimates[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double aw = cw.unit_weights[i][j] / p.loss.unit_loss[i][j];  // (A_i^-1 w_i)_j
      out.unit_estimates[i][j] = p.bayes_estimates[i][j] + scale * eta * shrink * aw;
    }
    out.area_estimates[i] = abar[i] + scale * eta * inter.s[i] * shrink;
  }
  return out;
}

BenchmarkSolution benchmark_raked(const BenchmarkProblem& problem,
                                  const std::string& scheme_tag) {
  const BenchmarkProblem p = prepared(problem);
  const auto& cw = p.constraint;
  const std::size_t m = p.bayes_estimates.size();

  for (std::size_t i = 0; i < m; ++i)
    for (double b : p.bayes_estimates[i])
      if (!(b > 0.0))
        throw invalid_input_error("raking requires positive Bayes estimates");

  const double tw = weighted_grand_mean(p.bayes_estimates, cw);
  if (!(tw > 0.0))
    throw invalid_input_error("raking requires a positive weighted grand mean");
  const double ratio = cw.target / tw;

  BenchmarkSolution out;
  out.scheme_tag = scheme_tag;
  out.unit_estimates.resize(m);
  out.area_estimates.resize(m);
  const auto abar = weighted_area_means(p.bayes_estimates, cw);
  for (std::size_t i = 0; i < m; ++i) {
    out.unit_estimates[i].resize(p.bayes_estimates[i].size());
    for (std::size_t j = 0; j < p.bayes_estimates[i].size(); ++j)
      out.unit_estimates[i][j] = ratio * p.bayes_estimates[i][j];
    out.area_estimates[i] = ratio * abar[i];
  }
  return out;
}

BenchmarkSolution pmse(BenchmarkSolution solution, const PosteriorSummary& posterior) {
  const std::size_t m = solution.unit_estimates.size();
  if (posterior.mean_theta.size() != m || posterior.var_theta.size() != m ||
      posterior.mean_area.size() != m || posterior.var_area.size() != m)
    throw missing_input_error("posterior summary does not cover every area");

  std::vector<std::vector<double>> unit_pmse(m);
  std::vector<double> area_pmse(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n = solution.unit_estimates[i].size();
    if (posterior.mean_theta[i].size() != n || posterior.var_theta[i].size() != n)
      throw missing_input_error("posterior summary does not cover every unit of area " +
                                std::to_string(i + 1));
    unit_pmse[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double adj = posterior.mean_theta[i][j] - solution.unit_estimates[i][j];
      unit_pmse[i][j] = posterior.var_theta[i][j] + adj * adj;
    }
    const double adj = posterior.mean_area[i] - solution.area_estimates[i];
    area_pmse[i] = posterior.var_area[i] + adj * adj;
  }
  solution.unit_pmse = std::move(unit_pmse);
  solution.area_pmse = std::move(area_pmse);
  return solution;
}

std::vector<double> percent_prmse_increase(const BenchmarkSolution& solution,
                                           const PosteriorSummary& posterior) {
  BenchmarkSolution with = solution.area_pmse ? solution : pmse(solution, posterior);
  const std::size_t m = with.area_estimates.size();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double v = posterior.var_area[i];
    if (!(v > 0.0)) {
      out[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double root_v = std::sqrt(v);
    out[i] = 100.0 * (std::sqrt((*with.area_pmse)[i]) - root_v) / root_v;
  }
  return out;
}

}  // namespace sabench
