#include "sabench/hb_model.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sabench/errors.hpp"

namespace sabench {

namespace {

constexpr long long kRejectionGuard = 1000000;  // consecutive rejections before giving up
constexpr double kInitialVarianceFloor = 0.1;

double expit(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void require_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite())
    throw sampler_divergence_error(std::string("nonfinite draw in ") + what);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw sampler_divergence_error(std::string("nonfinite draw in ") + what);
}

void validate_spec(const HBModelSpec& spec) {
  Eigen::Index total = 0;
  for (int n : spec.area_sizes) {
    if (n < 1) throw invalid_input_error("every area needs at least one unit");
    total += n;
  }
  if (total != spec.X.rows() || spec.y.size() != spec.X.rows())
    throw invalid_input_error("design, responses, and area sizes disagree on N");
  if (!(spec.hyper_a > 0 && spec.hyper_b > 0 && spec.hyper_c > 0 && spec.hyper_d > 0))
    throw invalid_input_error("hyperparameters a, b, c, d must be positive");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(spec.X);
  if (qr.rank() < spec.X.cols())
    throw invalid_input_error("design matrix X does not have full column rank");
}

// Z u expanded to unit length.
Eigen::VectorXd expand_to_units(const HBModelSpec& spec, const Eigen::VectorXd& per_area) {
  Eigen::VectorXd out(spec.num_units());
  Eigen::Index pos = 0;
  for (std::size_t i = 0; i < spec.area_sizes.size(); ++i) {
    out.segment(pos, spec.area_sizes[i]).setConstant(per_area(static_cast<Eigen::Index>(i)));
    pos += spec.area_sizes[i];
  }
  return out;
}

// Per-area sums of a unit-length vector.
Eigen::VectorXd area_sums(const HBModelSpec& spec, const Eigen::VectorXd& per_unit) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(spec.area_sizes.size()));
  Eigen::Index pos = 0;
  for (std::size_t i = 0; i < spec.area_sizes.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = per_unit.segment(pos, spec.area_sizes[i]).sum();
    pos += spec.area_sizes[i];
  }
  return out;
}

// Precomputes the fixed design factorization; one instance drives a chain.
class GibbsSampler {
 public:
  explicit GibbsSampler(const HBModelSpec& spec) : spec_(spec), llt_(spec.X.transpose() * spec.X) {
    if (llt_.info() != Eigen::Success)
      throw invalid_input_error("X^T X is not positive definite");
  }

  GibbsState step(const GibbsState& state, Rng& rng, RejectionStats* stats,
                  bool update_beta) const {
    GibbsState next = state;
    std::normal_distribution<double> stdnorm(0.0, 1.0);

    if (update_beta) {
      // beta | rest ~ N((X^T X)^-1 X^T (theta - Zu), sigma2_e (X^T X)^-1)
      const Eigen::VectorXd resid = next.theta - expand_to_units(spec_, next.u);
      const Eigen::VectorXd mean = llt_.solve(spec_.X.transpose() * resid);
      Eigen::VectorXd z(spec_.num_covariates());
      for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = stdnorm(rng);
      // cov = sigma2_e (L L^T)^-1, so mean + sigma_e L^-T z has the right law
      next.beta = mean + std::sqrt(next.sigma2_e) *
                             llt_.matrixU().solve(z);
      require_finite(next.beta, "beta");
    }

    const Eigen::VectorXd xb = spec_.X * next.beta;

    {
      // u_i | rest ~ N(D_i / sigma2_e * sum_j (theta_ij - x_ij^T beta), D_i)
      const Eigen::VectorXd rsum = area_sums(spec_, next.theta - xb);
      for (std::size_t i = 0; i < spec_.area_sizes.size(); ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        const double d_i =
            1.0 / (spec_.area_sizes[i] / next.sigma2_e + 1.0 / next.sigma2_u);
        const double mean = d_i / next.sigma2_e * rsum(idx);
        next.u(idx) = mean + std::sqrt(d_i) * stdnorm(rng);
      }
      require_finite(next.u, "u");
    }

    const Eigen::VectorXd zu = expand_to_units(spec_, next.u);

    {
      const Eigen::VectorXd resid = next.theta - xb - zu;
      const InverseGammaParams params{0.5 * (spec_.hyper_a + resid.squaredNorm()),
                                      0.5 * (spec_.hyper_b + spec_.num_units())};
      next.sigma2_e = sample_inverse_gamma(params, rng);
      require_finite(next.sigma2_e, "sigma2_e");
    }
    {
      const InverseGammaParams params{0.5 * (spec_.hyper_c + next.u.squaredNorm()),
                                      0.5 * (spec_.hyper_d + spec_.num_areas())};
      next.sigma2_u = sample_inverse_gamma(params, rng);
      require_finite(next.sigma2_u, "sigma2_u");
    }

    for (Eigen::Index j = 0; j < spec_.num_units(); ++j) {
      next.theta(j) = sample_theta_rejection(static_cast<int>(spec_.y(j)), xb(j) + zu(j),
                                             next.sigma2_e, rng, stats);
    }
    require_finite(next.theta, "theta");
    return next;
  }

 private:
  const HBModelSpec& spec_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace

HBModelSpec hb_spec_from_survey(const SurveyDataset& data, double a, double b, double c,
                                double d, bool add_intercept) {
  const std::size_t n_units = data.num_units();
  if (n_units == 0) throw invalid_input_error("dataset has no units");
  const std::size_t p_cov = data.areas.front().units.front().covariates.size();

  HBModelSpec spec;
  spec.hyper_a = a;
  spec.hyper_b = b;
  spec.hyper_c = c;
  spec.hyper_d = d;
  const Eigen::Index p = static_cast<Eigen::Index>(p_cov) + (add_intercept ? 1 : 0);
  spec.X.resize(static_cast<Eigen::Index>(n_units), p);
  spec.y.resize(static_cast<Eigen::Index>(n_units));
  spec.area_sizes.reserve(data.areas.size());

  Eigen::Index row = 0;
  for (const auto& area : data.areas) {
    spec.area_sizes.push_back(static_cast<int>(area.units.size()));
    for (const auto& unit : area.units) {
      if (unit.covariates.size() != p_cov)
        throw invalid_input_error("covariate count varies across units");
      if (unit.response != 0 && unit.response != 1)
        throw invalid_input_error("responses must be 0 or 1");
      Eigen::Index col = 0;
      if (add_intercept) spec.X(row, col++) = 1.0;
      for (double x : unit.covariates) spec.X(row, col++) = x;
      spec.y(row) = unit.response;
      ++row;
    }
  }
  validate_spec(spec);
  return spec;
}

long retained_count(const McmcConfig& config) {
  return (config.iterations - config.burn_in) / config.thin;
}

void validate_config(const McmcConfig& config) {
  if (config.iterations < 1) throw invalid_input_error("iterations must be positive");
  if (config.burn_in < 0) throw invalid_input_error("burn_in must be nonnegative");
  if (config.burn_in >= config.iterations)
    throw invalid_input_error("burn_in must be smaller than iterations");
  if (config.thin < 1 || config.thin > config.iterations - config.burn_in)
    throw invalid_input_error("thin must be in [1, iterations - burn_in]");
  if (config.chains < 1) throw invalid_input_error("chains must be positive");
}

GaussianMoments beta_conditional(const HBModelSpec& spec, const GibbsState& state) {
  const Eigen::MatrixXd xtx = spec.X.transpose() * spec.X;
  Eigen::LLT<Eigen::MatrixXd> llt(xtx);
  const Eigen::VectorXd resid = state.theta - expand_to_units(spec, state.u);
  GaussianMoments out;
  out.mean = llt.solve(spec.X.transpose() * resid);
  out.covariance =
      state.sigma2_e * llt.solve(Eigen::MatrixXd::Identity(xtx.rows(), xtx.cols()));
  return out;
}

GaussianMoments u_conditional(const HBModelSpec& spec, const GibbsState& state) {
  const Eigen::VectorXd rsum = area_sums(spec, state.theta - spec.X * state.beta);
  const auto m = static_cast<Eigen::Index>(spec.num_areas());
  GaussianMoments out;
  out.mean.resize(m);
  out.covariance = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double d_i = 1.0 / (spec.area_sizes[static_cast<std::size_t>(i)] / state.sigma2_e +
                              1.0 / state.sigma2_u);
    out.covariance(i, i) = d_i;
    out.mean(i) = d_i / state.sigma2_e * rsum(i);
  }
  return out;
}

InverseGammaParams sigma2_e_conditional(const HBModelSpec& spec, const GibbsState& state) {
  const Eigen::VectorXd resid =
      state.theta - spec.X * state.beta - expand_to_units(spec, state.u);
  return {0.5 * (spec.hyper_a + resid.squaredNorm()),
          0.5 * (spec.hyper_b + spec.num_units())};
}

InverseGammaParams sigma2_u_conditional(const HBModelSpec& spec, const GibbsState& state) {
  return {0.5 * (spec.hyper_c + state.u.squaredNorm()),
          0.5 * (spec.hyper_d + spec.num_areas())};
}

double sample_inverse_gamma(const InverseGammaParams& params, Rng& rng) {
  if (!(params.scale > 0.0) || !(params.shape > 0.0))
    throw invalid_input_error("inverse-gamma parameters must be positive");
  // If G ~ Gamma(shape, rate = scale) then 1/G ~ InverseGamma(scale, shape).
  std::gamma_distribution<double> gamma(params.shape, 1.0 / params.scale);
  return 1.0 / gamma(rng);
}

double theta_acceptance_probability(int y, double t) {
  const double e = expit(t);
  return y == 1 ? e : 1.0 - e;
}

double sample_theta_rejection(int y, double mu, double sigma2_e, Rng& rng,
                              RejectionStats* stats) {
  if (!(sigma2_e > 0.0)) throw invalid_input_error("sigma2_e must be positive");
  const double sd = std::sqrt(sigma2_e);
  std::normal_distribution<double> proposal(mu, sd);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (long long attempt = 0; attempt < kRejectionGuard; ++attempt) {
    const double t = proposal(rng);
    if (stats) ++stats->proposals;
    if (unif(rng) < theta_acceptance_probability(y, t)) {
      if (stats) ++stats->accepted;
      return t;
    }
  }
  throw sampler_divergence_error("rejection sampler exceeded the acceptance guard");
}

GibbsState initial_state(const HBModelSpec& spec) {
  validate_spec(spec);
  const Eigen::Index n = spec.num_units();

  // Empirical logits of responses shrunk to (y + 0.5) / 2, i.e. +/- log 3.
  Eigen::VectorXd z(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double p = (spec.y(j) + 0.5) / 2.0;
    z(j) = std::log(p / (1.0 - p));
  }

  GibbsState state;
  state.beta = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(spec.X).solve(z);
  state.u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.num_areas()));
  state.theta = z;

  const Eigen::VectorXd resid = z - spec.X * state.beta;
  state.sigma2_e =
      std::max(kInitialVarianceFloor, resid.squaredNorm() / static_cast<double>(n));

  Eigen::VectorXd rbar = area_sums(spec, resid);
  for (std::size_t i = 0; i < spec.area_sizes.size(); ++i)
    rbar(static_cast<Eigen::Index>(i)) /= spec.area_sizes[i];
  const double mean_rbar = rbar.mean();
  state.sigma2_u = std::max(
      kInitialVarianceFloor,
      (rbar.array() - mean_rbar).square().sum() / static_cast<double>(rbar.size()));
  return state;
}

GibbsState gibbs_step(const GibbsState& state, const HBModelSpec& spec, Rng& rng,
                      RejectionStats* stats, bool update_beta) {
  GibbsSampler sampler(spec);
  return sampler.step(state, rng, stats, update_beta);
}

std::vector<std::vector<GibbsState>> run_chains(const HBModelSpec& spec,
                                                const McmcConfig& config,
                                                RejectionStats* stats) {
  validate_config(config);
  validate_spec(spec);
  const GibbsSampler sampler(spec);
  const long keep = retained_count(config);

  std::vector<std::vector<GibbsState>> chains(static_cast<std::size_t>(config.chains));
  for (int chain = 0; chain < config.chains; ++chain) {
    Rng rng = sub_rng(config.seed, static_cast<std::uint64_t>(chain));
    GibbsState state = initial_state(spec);
    auto& retained = chains[static_cast<std::size_t>(chain)];
    retained.reserve(static_cast<std::size_t>(keep));
    for (long t = 1; t <= config.iterations; ++t) {
      try {
        state = sampler.step(state, rng, stats, true);
      } catch (const sampler_divergence_error& e) {
        throw sampler_divergence_error("chain " + std::to_string(chain) + " iteration " +
                                       std::to_string(t) + ": " + e.what());
      }
      if (t > config.burn_in && (t - config.burn_in) % config.thin == 0)
        retained.push_back(state);
    }
  }
  return chains;
}

std::vector<GibbsState> run_chain(const HBModelSpec& spec, const McmcConfig& config,
                                  RejectionStats* stats) {
  auto chains = run_chains(spec, config, stats);
  std::vector<GibbsState> all;
  for (auto& chain : chains)
    for (auto& state : chain) all.push_back(std::move(state));
  return all;
}

PosteriorSummary summarize_posterior(const std::vector<GibbsState>& draws,
                                     const ConstraintWeights& constraint,
                                     SummaryScale scale) {
  if (draws.size() < 2)
    throw insufficient_sample_error("posterior summary needs at least 2 retained draws");
  const std::size_t m = constraint.unit_weights.size();
  Eigen::Index total = 0;
  for (const auto& w : constraint.unit_weights) total += static_cast<Eigen::Index>(w.size());
  if (draws.front().theta.size() != total)
    throw invalid_input_error("draws and constraint weights disagree on unit count");

  const double inv_m = 1.0 / static_cast<double>(draws.size());

  PosteriorSummary out;
  out.retained_draws = draws.size();
  out.mean_theta.resize(m);
  out.var_theta.resize(m);
  out.within_area_cov.resize(m);
  out.mean_area.resize(m);
  out.var_area.resize(m);

  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto n = static_cast<Eigen::Index>(constraint.unit_weights[i].size());
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd sum_outer = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd values(n);
    for (const auto& draw : draws) {
      if (scale == SummaryScale::Probability) {
        for (Eigen::Index j = 0; j < n; ++j) values(j) = expit(draw.theta(offset + j));
      } else {
        values = draw.theta.segment(offset, n);
      }
      sum += values;
      sum_outer.selfadjointView<Eigen::Lower>().rankUpdate(values, 1.0);
    }
    const Eigen::VectorXd mean = sum * inv_m;
    Eigen::MatrixXd cov =
        Eigen::MatrixXd(sum_outer.selfadjointView<Eigen::Lower>()) * inv_m -
        mean * mean.transpose();
    cov = 0.5 * (cov + cov.transpose());  // enforce exact symmetry

    out.mean_theta[i].assign(mean.data(), mean.data() + n);
    out.var_theta[i].resize(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j)
      out.var_theta[i][static_cast<std::size_t>(j)] = std::max(0.0, cov(j, j));

    Eigen::VectorXd w(n);
    for (Eigen::Index j = 0; j < n; ++j) w(j) = constraint.unit_weights[i][j];
    out.mean_area[i] = w.dot(mean);
    out.var_area[i] = std::max(0.0, w.dot(cov * w));
    out.within_area_cov[i] = std::move(cov);
    offset += n;
  }
  return out;
}

double autocorrelation(const std::vector<double>& series, int lag) {
  const std::size_t n = series.size();
  if (lag < 0 || static_cast<std::size_t>(lag) >= n || n < 2)
    return std::numeric_limits<double>::quiet_NaN();
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  double denom = 0.0;
  for (double v : series) denom += (v - mean) * (v - mean);
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  double num = 0.0;
  for (std::size_t t = 0; t + static_cast<std::size_t>(lag) < n; ++t)
    num += (series[t] - mean) * (series[t + static_cast<std::size_t>(lag)] - mean);
  return num / denom;
}

double effective_sample_size(const std::vector<double>& series) {
  const auto n = static_cast<double>(series.size());
  if (series.size() < 4) return n;
  // Geyer initial positive sequence: add lag pairs while their sum is positive.
  double sum_rho = 0.0;
  for (int k = 1; k + 1 < static_cast<int>(series.size()); k += 2) {
    const double pair = autocorrelation(series, k) + autocorrelation(series, k + 1);
    if (!(pair > 0.0)) break;
    sum_rho += pair;
  }
  return n / (1.0 + 2.0 * sum_rho);
}

double scale_reduction_statistic(const std::vector<std::vector<double>>& chains) {
  if (chains.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> means;
  double w = 0.0;
  for (const auto& chain : chains) {
    double mean = 0.0;
    for (double v : chain) mean += v;
    mean /= static_cast<double>(chain.size());
    double var = 0.0;
    for (double v : chain) var += (v - mean) * (v - mean);
    var /= static_cast<double>(chain.size());
    means.push_back(mean);
    w += var;
  }
  w /= static_cast<double>(chains.size());
  double grand = 0.0;
  for (double m : means) grand += m;
  grand /= static_cast<double>(means.size());
  double b = 0.0;
  for (double m : means) b += (m - grand) * (m - grand);
  b /= static_cast<double>(means.size());
  if (w == 0.0) return b == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return std::sqrt((w + b) / w);
}

std::vector<double> extract_series(const std::vector<GibbsState>& draws,
                                   const std::string& name) {
  auto indexed = [&](const std::string& prefix, Eigen::Index limit,
                     auto getter) -> std::vector<double> {
    const std::string open = prefix + "[";
    if (name.rfind(open, 0) != 0 || name.back() != ']')
      return {};
    const std::string digits = name.substr(open.size(), name.size() - open.size() - 1);
    const Eigen::Index idx = static_cast<Eigen::Index>(std::stol(digits));
    if (idx < 0 || idx >= limit)
      throw invalid_input_error("parameter index out of range: " + name);
    std::vector<double> out;
    out.reserve(draws.size());
    for (const auto& d : draws) out.push_back(getter(d, idx));
    return out;
  };

  if (draws.empty()) throw invalid_input_error("no draws to extract from");
  if (name == "sigma2_e") {
    std::vector<double> out;
    for (const auto& d : draws) out.push_back(d.sigma2_e);
    return out;
  }
  if (name == "sigma2_u") {
    std::vector<double> out;
    for (const auto& d : draws) out.push_back(d.sigma2_u);
    return out;
  }
  if (auto s = indexed("beta", draws.front().beta.size(),
                       [](const GibbsState& d, Eigen::Index i) { return d.beta(i); });
      !s.empty())
    return s;
  if (auto s = indexed("u", draws.front().u.size(),
                       [](const GibbsState& d, Eigen::Index i) { return d.u(i); });
      !s.empty())
    return s;
  if (auto s = indexed("theta", draws.front().theta.size(),
                       [](const GibbsState& d, Eigen::Index i) { return d.theta(i); });
      !s.empty())
    return s;
  throw invalid_input_error("unknown parameter name: " + name);
}

std::vector<std::string> default_monitored(const HBModelSpec& spec) {
  std::vector<std::string> names;
  for (Eigen::Index k = 0; k < spec.num_covariates(); ++k)
    names.push_back("beta[" + std::to_string(k) + "]");
  names.emplace_back("sigma2_e");
  names.emplace_back("sigma2_u");
  for (std::size_t i = 0; i < spec.num_areas(); ++i)
    names.push_back("u[" + std::to_string(i) + "]");
  return names;
}

DiagnosticsReport mcmc_diagnostics(const std::vector<std::vector<GibbsState>>& chains,
                                   const std::vector<std::string>& monitored) {
  if (chains.empty() || chains.front().empty())
    throw insufficient_sample_error("diagnostics need at least one nonempty chain");

  DiagnosticsReport report;
  for (const auto& name : monitored) {
    std::vector<std::vector<double>> series;
    std::vector<double> pooled;
    for (const auto& chain : chains) {
      series.push_back(extract_series(chain, name));
      pooled.insert(pooled.end(), series.back().begin(), series.back().end());
    }

    ParameterDiagnostics d;
    d.name = name;
    double mean = 0.0;
    for (double v : pooled) mean += v;
    mean /= static_cast<double>(pooled.size());
    double var = 0.0;
    for (double v : pooled) var += (v - mean) * (v - mean);
    var /= static_cast<double>(pooled.size());
    d.mean = mean;
    d.sd = std::sqrt(var);
    d.acf1 = autocorrelation(series.front(), 1);
    d.acf5 = autocorrelation(series.front(), 5);
    d.acf10 = autocorrelation(series.front(), 10);
    d.ess = 0.0;
    for (const auto& s : series) d.ess += effective_sample_size(s);
    d.scale_reduction = scale_reduction_statistic(series);
    report.parameters.push_back(std::move(d));
  }
  return report;
}

void write_draws(std::ostream& os, const std::vector<GibbsState>& draws) {
  if (draws.empty()) throw invalid_input_error("no draws to write");
  const auto& first = draws.front();

  os << "iteration";
  for (Eigen::Index k = 0; k < first.beta.size(); ++k) os << " beta[" << k << "]";
  for (Eigen::Index k = 0; k < first.u.size(); ++k) os << " u[" << k << "]";
  os << " sigma2_e sigma2_u";
  for (Eigen::Index k = 0; k < first.theta.size(); ++k) os << " theta[" << k << "]";
  os << "\n";

  char buf[32];
  const auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, " %.17g", v);
    os << buf;
  };
  for (std::size_t t = 0; t < draws.size(); ++t) {
    os << t;
    const auto& d = draws[t];
    for (Eigen::Index k = 0; k < d.beta.size(); ++k) put(d.beta(k));
    for (Eigen::Index k = 0; k < d.u.size(); ++k) put(d.u(k));
    put(d.sigma2_e);
    put(d.sigma2_u);
    for (Eigen::Index k = 0; k < d.theta.size(); ++k) put(d.theta(k));
    os << "\n";
  }
}

std::vector<GibbsState> read_draws(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw parse_error("draw dump is empty");
  std::istringstream hs(header);
  std::string field;
  Eigen::Index n_beta = 0, n_u = 0, n_theta = 0;
  bool saw_iteration = false;
  while (hs >> field) {
    if (field == "iteration") saw_iteration = true;
    else if (field.rfind("beta[", 0) == 0) ++n_beta;
    else if (field.rfind("u[", 0) == 0) ++n_u;
    else if (field.rfind("theta[", 0) == 0) ++n_theta;
    else if (field != "sigma2_e" && field != "sigma2_u")
      throw parse_error("unknown draw-dump column: " + field);
  }
  if (!saw_iteration) throw parse_error("draw dump header lacks the iteration column");

  std::vector<GibbsState> draws;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    long iteration;
    if (!(ls >> iteration))
      throw parse_error("draw dump line " + std::to_string(lineno) + ": bad iteration");
    GibbsState d;
    d.beta.resize(n_beta);
    d.u.resize(n_u);
    d.theta.resize(n_theta);
    for (Eigen::Index k = 0; k < n_beta; ++k) ls >> d.beta(k);
    for (Eigen::Index k = 0; k < n_u; ++k) ls >> d.u(k);
    ls >> d.sigma2_e >> d.sigma2_u;
    for (Eigen::Index k = 0; k < n_theta; ++k) ls >> d.theta(k);
    if (!ls) throw parse_error("draw dump line " + std::to_string(lineno) + ": short record");
    draws.push_back(std::move(d));
  }
  return draws;
}

}  // namespace sabench
