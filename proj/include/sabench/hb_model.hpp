#ifndef SABENCH_HB_MODEL_HPP
#define SABENCH_HB_MODEL_HPP

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sabench/rng.hpp"
#include "sabench/types.hpp"

namespace sabench {

/// Hierarchical logistic-normal model:
///   y_ij | theta_ij  ~ Bernoulli(expit(theta_ij))
///   theta_ij | u_i   ~ N(x_ij^T beta + u_i, sigma2_e)
///   u_i | sigma2_u   ~ N(0, sigma2_u)
///   beta             ~ flat on R^p
///   sigma2_e         ~ InverseGamma(scale a/2, shape b/2)
///   sigma2_u         ~ InverseGamma(scale c/2, shape d/2)
/// InverseGamma(scale s, shape k) throughout means density
/// proportional to x^-(k+1) exp(-s/x).
struct HBModelSpec {
  double hyper_a = 0.02;
  double hyper_b = 0.02;
  double hyper_c = 0.02;
  double hyper_d = 0.02;
  Eigen::MatrixXd X;            // N x p design, full column rank
  std::vector<int> area_sizes;  // n_i; Z = blockdiag(1_{n_1}, ..., 1_{n_m})
  Eigen::VectorXd y;            // responses in {0, 1}, length N

  Eigen::Index num_units() const { return X.rows(); }
  Eigen::Index num_covariates() const { return X.cols(); }
  std::size_t num_areas() const { return area_sizes.size(); }
};

/// Build a model spec from survey data. add_intercept prepends a column of
/// ones to the covariates (used for raw CSV input; simulated designs already
/// carry their intercept).
HBModelSpec hb_spec_from_survey(const SurveyDataset& data, double a, double b, double c,
                                double d, bool add_intercept);

/// Current draw of every latent quantity.
struct GibbsState {
  Eigen::VectorXd beta;
  Eigen::VectorXd u;
  Eigen::VectorXd theta;
  double sigma2_e = 1.0;
  double sigma2_u = 1.0;
};

struct McmcConfig {
  long iterations = 10000;
  long burn_in = 1000;
  long thin = 10;
  std::uint64_t seed = 1;
  int chains = 1;
};

/// Number of retained draws per chain: (iterations - burn_in) / thin.
long retained_count(const McmcConfig& config);

/// Throws invalid_input_error unless burn_in < iterations,
/// thin <= iterations - burn_in, and all counts are positive.
void validate_config(const McmcConfig& config);

/// Closed-form full-conditional parameters, exposed so they can be checked
/// against the sampler and against hand calculations.
struct GaussianMoments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};
struct InverseGammaParams {
  double scale = 0.0;
  double shape = 0.0;
};

GaussianMoments beta_conditional(const HBModelSpec& spec, const GibbsState& state);
GaussianMoments u_conditional(const HBModelSpec& spec, const GibbsState& state);
InverseGammaParams sigma2_e_conditional(const HBModelSpec& spec, const GibbsState& state);
InverseGammaParams sigma2_u_conditional(const HBModelSpec& spec, const GibbsState& state);

/// Draw from InverseGamma(scale, shape) under the convention above.
double sample_inverse_gamma(const InverseGammaParams& params, Rng& rng);

struct RejectionStats {
  long long proposals = 0;
  long long accepted = 0;
};

/// Acceptance probability of a proposed theta value:
/// expit(t) for y = 1, 1 - expit(t) for y = 0. Always in (0, 1).
double theta_acceptance_probability(int y, double t);

/// Draw from the nonstandard conditional
///   pi(theta) proportional to exp[y theta - log(1 + e^theta)
///                                 - (theta - mu)^2 / (2 sigma2_e)]
/// by proposing N(mu, sigma2_e) and accepting with the probability above.
double sample_theta_rejection(int y, double mu, double sigma2_e, Rng& rng,
                              RejectionStats* stats = nullptr);

/// Deterministic starting point: beta from a least-squares fit of shrunk
/// empirical logits, u = 0, theta at the empirical logits, variances from
/// the residuals of that fit (floored away from zero).
GibbsState initial_state(const HBModelSpec& spec);

/// One full Gibbs sweep in the order beta, u, sigma2_e, sigma2_u, theta.
/// update_beta = false leaves beta untouched (used by the sampler-validation
/// harness, where the flat beta prior has no proper marginal to draw from).
GibbsState gibbs_step(const GibbsState& state, const HBModelSpec& spec, Rng& rng,
                      RejectionStats* stats = nullptr, bool update_beta = true);

/// Run `config.chains` independent chains with sub-seeds derived from
/// config.seed; returns the retained draws of each chain.
std::vector<std::vector<GibbsState>> run_chains(const HBModelSpec& spec,
                                                const McmcConfig& config,
                                                RejectionStats* stats = nullptr);

/// Retained draws of all chains concatenated in chain order.
std::vector<GibbsState> run_chain(const HBModelSpec& spec, const McmcConfig& config,
                                  RejectionStats* stats = nullptr);

/// Scale on which the unit parameters are summarized: the raw chain values
/// (logits) or their expit transform (probabilities). Benchmarking proportions
/// uses the probability scale.
enum class SummaryScale { Raw, Probability };

/// Monte Carlo moments of the unit parameters with population (divide-by-M)
/// convention; var_area is the full double sum w^T Cov w. Needs >= 2 draws.
PosteriorSummary summarize_posterior(const std::vector<GibbsState>& draws,
                                     const ConstraintWeights& constraint,
                                     SummaryScale scale = SummaryScale::Raw);

// --- Diagnostics -----------------------------------------------------------

struct ParameterDiagnostics {
  std::string name;
  double mean = 0.0;
  double sd = 0.0;
  double acf1 = 0.0;
  double acf5 = 0.0;
  double acf10 = 0.0;
  double ess = 0.0;
  double scale_reduction = 0.0;  // NaN when fewer than 2 chains
};

struct DiagnosticsReport {
  std::vector<ParameterDiagnostics> parameters;
};

/// Series statistics used by the report; exposed for direct testing.
double autocorrelation(const std::vector<double>& series, int lag);
double effective_sample_size(const std::vector<double>& series);
/// sqrt((W + B) / W) with W the mean within-chain population variance and
/// B the population variance of the chain means. Identical chains give 1.
double scale_reduction_statistic(const std::vector<std::vector<double>>& chains);

/// Extract one scalar series by name: "beta[k]", "u[k]", "theta[k]",
/// "sigma2_e", "sigma2_u".
std::vector<double> extract_series(const std::vector<GibbsState>& draws,
                                   const std::string& name);

/// beta[*], sigma2_e, sigma2_u, u[*].
std::vector<std::string> default_monitored(const HBModelSpec& spec);

DiagnosticsReport mcmc_diagnostics(const std::vector<std::vector<GibbsState>>& chains,
                                   const std::vector<std::string>& monitored);

/// Columnar draw dump: a header line naming every field, then one record per
/// retained iteration. Values round-trip exactly through read_draws.
void write_draws(std::ostream& os, const std::vector<GibbsState>& draws);
std::vector<GibbsState> read_draws(std::istream& is);

}  // namespace sabench

#endif
