#ifndef SABENCH_SIM_HPP
#define SABENCH_SIM_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sabench/core.hpp"
#include "sabench/hb_model.hpp"
#include "sabench/types.hpp"

namespace sabench {

/// Generating model for synthetic data:
///   prob = expit(X beta + Z u + e),  u ~ N(0, sigma2_u I),  e ~ N(0, sigma2_e I),
///   y ~ Bernoulli(prob).
/// X is the full design (intercept column included when wanted) and is used
/// as-is when the data are fitted.
struct SimSpec {
  Eigen::MatrixXd X;
  std::vector<int> area_sizes;
  Eigen::VectorXd beta_true;
  double sigma2_u_true = 0.25;
  double sigma2_e_true = 1.0;
  std::uint64_t seed = 1;
  /// Raw survey weights per area/unit; uniform (all 1) when absent, which
  /// makes eta_i proportional to n_i.
  std::optional<std::vector<std::vector<double>>> survey_weights;
};

/// Random design with m areas, n_i log-uniform in [n_min, n_max], an
/// intercept column followed by standard-normal covariate columns (one per
/// remaining beta entry). Deterministic in the seed.
SimSpec make_sim_spec(int m, double n_min, double n_max, const Eigen::VectorXd& beta,
                      double sigma2_u, double sigma2_e, std::uint64_t seed);

/// Desk-scale default: m = 20 areas, n_i log-uniform in [5, 50], design
/// [1, N(0,1), N(0,1)], beta = (-1, 0.5, -0.25), sigma2_u = 0.25,
/// sigma2_e = 1. Fixture values, deterministic in the seed.
SimSpec default_sim_spec(std::uint64_t seed);

/// Draw one dataset from the generating model. Deterministic given the seed.
SurveyDataset simulate_dataset(const SimSpec& spec);

/// One requested benchmarked estimator: a file-safe tag plus its loss-weight
/// scheme. The "raked" tag is computed by direct raking.
struct SchemeRequest {
  std::string tag;
  LossScheme scheme;
};

/// Per-scheme outputs of one fitted dataset.
struct SchemeSeries {
  std::string tag;
  std::vector<double> area_estimates;  // benchmarked delta_i
  std::vector<double> adjustment;      // delta_i - bayes area mean
  std::vector<double> area_pmse;
  std::vector<double> pct_prmse;
  double max_mean_residual = 0.0;      // max_i |sum_j w_ij theta_ij - delta_i|
  double target_residual = 0.0;        // |sum_i eta_i delta_i - p|
};

/// Everything derived from fitting one dataset.
struct FitResult {
  ConstraintWeights constraint;
  PosteriorSummary posterior;           // probability scale
  std::vector<double> bayes_area;       // E(abar_iw | y)
  Eigen::VectorXd beta_hat;             // posterior means of beta
  double sigma2_u_hat = 0.0;
  double sigma2_e_hat = 0.0;
  std::vector<SchemeSeries> schemes;
};

struct StudyOptions {
  McmcConfig mcmc;
  std::vector<SchemeRequest> schemes;
  double hyper_a = 0.02, hyper_b = 0.02, hyper_c = 0.02, hyper_d = 0.02;
  /// Re-simulate responses from the fitted posterior point estimates and fit
  /// them again (the data source comparison). Costs a second MCMC run.
  bool fit_replicate = true;
  /// Replace the survey target with the fitted Bayes grand mean, making the
  /// benchmarking correction exactly zero.
  bool target_at_bayes_mean = false;
};

struct SimulationReport {
  std::vector<std::string> area_ids;
  std::vector<int> domain_sizes;
  FitResult reference;
  std::optional<FitResult> replicate;
  /// Per scheme: area estimates under the replicate minus under the
  /// reference data; empty when fit_replicate is off.
  std::vector<std::vector<double>> estimator_difference;
};

/// Fit a dataset and compute every requested benchmarked estimator.
FitResult fit_and_benchmark(const SurveyDataset& data, const StudyOptions& options,
                            bool add_intercept = false);

/// Simulate, fit, benchmark, and (optionally) repeat on responses regenerated
/// from the fitted model, producing the comparison series per scheme.
SimulationReport run_simulation_study(const SimSpec& spec, const StudyOptions& options);

}  // namespace sabench

#endif
