#include "sabench/sim.hpp"

#include <cmath>

#include "sabench/bench_mean.hpp"
#include "sabench/errors.hpp"

namespace sabench {

namespace {

double expit(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

SimSpec default_sim_spec(std::uint64_t seed) {
  constexpr int m = 20;
  SimSpec spec;
  spec.seed = seed;
  spec.beta_true.resize(3);
  spec.beta_true << -1.0, 0.5, -0.25;
  spec.sigma2_u_true = 0.25;
  spec.sigma2_e_true = 1.0;

  Rng rng = sub_rng(seed, 0xDE51);  // design stream, separate from responses and chains
  std::uniform_real_distribution<double> unif(std::log(5.0), std::log(50.0));
  std::normal_distribution<double> stdnorm(0.0, 1.0);

  spec.area_sizes.resize(m);
  Eigen::Index total = 0;
  for (int i = 0; i < m; ++i) {
    spec.area_sizes[static_cast<std::size_t>(i)] =
        static_cast<int>(std::lround(std::exp(unif(rng))));
    total += spec.area_sizes[static_cast<std::size_t>(i)];
  }
  spec.X.resize(total, 3);
  for (Eigen::Index r = 0; r < total; ++r) {
    spec.X(r, 0) = 1.0;
    spec.X(r, 1) = stdnorm(rng);
    spec.X(r, 2) = stdnorm(rng);
  }
  return spec;
}

SurveyDataset simulate_dataset(const SimSpec& spec) {
  const auto m = spec.area_sizes.size();
  Eigen::Index total = 0;
  for (int n : spec.area_sizes) {
    if (n < 1) throw invalid_input_error("every simulated area needs at least one unit");
    total += n;
  }
  if (spec.X.rows() != total || spec.X.cols() != spec.beta_true.size())
    throw invalid_input_error("simulation design dimensions disagree");
  if (spec.survey_weights && spec.survey_weights->size() != m)
    throw invalid_input_error("survey weights do not cover every simulated area");
  if (!(spec.sigma2_u_true >= 0.0) || !(spec.sigma2_e_true >= 0.0))
    throw invalid_input_error("simulation variances must be nonnegative");

  Rng rng = sub_rng(spec.seed, 0xD47A);  // response stream
  std::normal_distribution<double> stdnorm(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const double sd_u = std::sqrt(spec.sigma2_u_true);
  const double sd_e = std::sqrt(spec.sigma2_e_true);
  const Eigen::VectorXd xb = spec.X * spec.beta_true;

  SurveyDataset data;
  data.areas.resize(m);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < m; ++i) {
    auto& area = data.areas[i];
    area.area_id = "a" + std::to_string(i + 1);
    const int n = spec.area_sizes[i];
    if (spec.survey_weights && (*spec.survey_weights)[i].size() != static_cast<std::size_t>(n))
      throw invalid_input_error("survey weights of area " + area.area_id +
                                " do not cover every unit");
    area.units.resize(static_cast<std::size_t>(n));
    const double u_i = sd_u * stdnorm(rng);
    for (int j = 0; j < n; ++j) {
      auto& unit = area.units[static_cast<std::size_t>(j)];
      unit.unit_id = area.area_id + "_" + std::to_string(j + 1);
      unit.survey_weight =
          spec.survey_weights ? (*spec.survey_weights)[i][static_cast<std::size_t>(j)] : 1.0;
      unit.covariates.resize(static_cast<std::size_t>(spec.X.cols()));
      for (Eigen::Index c = 0; c < spec.X.cols(); ++c)
        unit.covariates[static_cast<std::size_t>(c)] = spec.X(row, c);
      const double prob = expit(xb(row) + u_i + sd_e * stdnorm(rng));
      unit.response = unif(rng) < prob ? 1 : 0;
      ++row;
    }
  }
  return data;
}

FitResult fit_and_benchmark(const SurveyDataset& data, const StudyOptions& options,
                            bool add_intercept) {
  FitResult fit;
  fit.constraint = constraint_weights_from_survey(data);

  const HBModelSpec hb = hb_spec_from_survey(data, options.hyper_a, options.hyper_b,
                                             options.hyper_c, options.hyper_d, add_intercept);
  const auto draws = run_chain(hb, options.mcmc);
  fit.posterior = summarize_posterior(draws, fit.constraint, SummaryScale::Probability);
  fit.bayes_area = fit.posterior.mean_area;

  fit.beta_hat = Eigen::VectorXd::Zero(hb.num_covariates());
  for (const auto& d : draws) {
    fit.beta_hat += d.beta;
    fit.sigma2_e_hat += d.sigma2_e;
    fit.sigma2_u_hat += d.sigma2_u;
  }
  const double inv = 1.0 / static_cast<double>(draws.size());
  fit.beta_hat *= inv;
  fit.sigma2_e_hat *= inv;
  fit.sigma2_u_hat *= inv;

  if (options.target_at_bayes_mean)
    fit.constraint.target = weighted_grand_mean(fit.posterior.mean_theta, fit.constraint);

  BenchmarkProblem problem;
  problem.bayes_estimates = fit.posterior.mean_theta;
  problem.constraint = fit.constraint;
  problem.posterior = fit.posterior;

  for (const auto& request : options.schemes) {
    BenchmarkSolution solution;
    if (request.scheme.kind == LossScheme::Kind::Raked) {
      solution = benchmark_raked(problem, request.tag);
    } else {
      problem.loss = make_loss_weights(request.scheme, problem);
      solution = benchmark_mean(problem, request.tag);
    }
    solution = pmse(std::move(solution), fit.posterior);

    SchemeSeries series;
    series.tag = request.tag;
    series.area_estimates = solution.area_estimates;
    series.area_pmse = *solution.area_pmse;
    series.pct_prmse = percent_prmse_increase(solution, fit.posterior);
    series.adjustment.resize(solution.area_estimates.size());
    double target_sum = 0.0;
    for (std::size_t i = 0; i < solution.area_estimates.size(); ++i) {
      series.adjustment[i] = solution.area_estimates[i] - fit.bayes_area[i];
      double wmean = 0.0;
      for (std::size_t j = 0; j < solution.unit_estimates[i].size(); ++j)
        wmean += fit.constraint.unit_weights[i][j] * solution.unit_estimates[i][j];
      series.max_mean_residual =
          std::max(series.max_mean_residual, std::abs(wmean - solution.area_estimates[i]));
      target_sum += fit.constraint.area_weights[i] * solution.area_estimates[i];
    }
    series.target_residual = std::abs(target_sum - fit.constraint.target);
    fit.schemes.push_back(std::move(series));
  }
  return fit;
}

SimulationReport run_simulation_study(const SimSpec& spec, const StudyOptions& options) {
  if (options.schemes.empty())
    throw invalid_input_error("simulation study needs at least one scheme");

  const SurveyDataset reference_data = simulate_dataset(spec);

  SimulationReport report;
  for (const auto& area : reference_data.areas) {
    report.area_ids.push_back(area.area_id);
    report.domain_sizes.push_back(static_cast<int>(area.units.size()));
  }
  report.reference = fit_and_benchmark(reference_data, options, /*add_intercept=*/false);

  if (options.fit_replicate) {
    // Regenerate responses from the fitted posterior point estimates over the
    // same design, then push them through the identical pipeline.
    SimSpec replicate_spec = spec;
    replicate_spec.beta_true = report.reference.beta_hat;
    replicate_spec.sigma2_u_true = report.reference.sigma2_u_hat;
    replicate_spec.sigma2_e_true = report.reference.sigma2_e_hat;
    replicate_spec.seed = spec.seed + 0x517CC1B727220A95ULL;

    StudyOptions replicate_options = options;
    replicate_options.mcmc.seed = options.mcmc.seed + 0x9E3779B97F4A7C15ULL;

    const SurveyDataset replicate_data = simulate_dataset(replicate_spec);
    report.replicate = fit_and_benchmark(replicate_data, replicate_options, false);

    report.estimator_difference.resize(options.schemes.size());
    for (std::size_t s = 0; s < options.schemes.size(); ++s) {
      const auto& ref = report.reference.schemes[s].area_estimates;
      const auto& rep = report.replicate->schemes[s].area_estimates;
      report.estimator_difference[s].resize(ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i)
        report.estimator_difference[s][i] = rep[i] - ref[i];
    }
  }
  return report;
}

}  // namespace sabench
