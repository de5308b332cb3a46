#ifndef SABENCH_TYPES_HPP
#define SABENCH_TYPES_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

namespace sabench {

/// One sampled unit: binary response, raw survey (person) weight, covariates.
struct UnitRecord {
  std::string unit_id;
  int response = 0;        // 0/1
  double survey_weight = 1.0;  // w*_ij > 0
  std::vector<double> covariates;
};

/// All units belonging to one small area / domain, in input order.
struct AreaBlock {
  std::string area_id;
  std::vector<UnitRecord> units;
};

/// Unit-level survey data grouped into areas. Areas and units keep input
/// order everywhere; outputs align positionally with inputs.
struct SurveyDataset {
  std::vector<AreaBlock> areas;

  std::size_t num_areas() const { return areas.size(); }
  std::size_t num_units() const {
    std::size_t n = 0;
    for (const auto& a : areas) n += a.units.size();
    return n;
  }
};

/// Normalized benchmarking weights: per-area unit weights w_i (each summing
/// to 1), area weights eta (summing to 1), and the overall target p.
struct ConstraintWeights {
  std::vector<std::vector<double>> unit_weights;  // w_{ij}
  std::vector<double> area_weights;               // eta_i
  double target = 0.0;                            // p
};

/// Loss weights: unit-level xi_{ij} > 0 and area-level phi_i. phi_i may be
/// zero or negative as long as 1 + phi_i s_i > 0 with
/// s_i = sum_j w_{ij}^2 / xi_{ij}.
struct LossWeights {
  std::vector<std::vector<double>> unit_loss;  // xi_{ij}
  std::vector<double> area_loss;               // phi_i
};

/// Monte Carlo posterior moments of the unit parameters, on whatever scale
/// the summarizer was asked for (raw chain values or probabilities).
struct PosteriorSummary {
  std::vector<std::vector<double>> mean_theta;  // E(theta_ij | y)
  std::vector<std::vector<double>> var_theta;   // V(theta_ij | y)
  std::vector<Eigen::MatrixXd> within_area_cov; // Cov(theta_ij, theta_ij' | y)
  std::vector<double> mean_area;                // E(thetabar_iw | y)
  std::vector<double> var_area;                 // V(thetabar_iw | y)
  std::size_t retained_draws = 0;
};

/// Inputs for one two-stage benchmarking run.
struct BenchmarkProblem {
  std::vector<std::vector<double>> bayes_estimates;  // thetahat^B_{ij}
  ConstraintWeights constraint;
  LossWeights loss;
  std::optional<PosteriorSummary> posterior;  // needed for PMSE and
                                              // variance-based weights
};

/// Benchmarked estimates. unit_estimates satisfy
/// sum_j w_ij theta_ij = delta_i and sum_i eta_i delta_i = p.
struct BenchmarkSolution {
  std::vector<std::vector<double>> unit_estimates;
  std::vector<double> area_estimates;
  std::optional<std::vector<std::vector<double>>> unit_pmse;
  std::optional<std::vector<double>> area_pmse;
  std::string scheme_tag;
};

}  // namespace sabench

#endif
