#ifndef SABENCH_CORE_HPP
#define SABENCH_CORE_HPP

#include <optional>
#include <string>
#include <vector>

#include "sabench/types.hpp"

namespace sabench {

/// Loss-weight schemes for the benchmarked estimators.
struct LossScheme {
  enum class Kind { Constant, InverseVariance, Raked, DomainWeighted };

  Kind kind = Kind::Constant;
  /// Raked only: the g > max_i 1/eta_i in phi_i = (g eta_i - 1)/abar_i.
  /// Defaults to 2 * max_i 1/eta_i when unset.
  std::optional<double> raking_g;

  static LossScheme constant() { return {Kind::Constant, std::nullopt}; }
  static LossScheme inverse_variance() { return {Kind::InverseVariance, std::nullopt}; }
  static LossScheme raked(std::optional<double> g = std::nullopt) { return {Kind::Raked, g}; }
  static LossScheme domain_weighted() { return {Kind::DomainWeighted, std::nullopt}; }
};

/// Normalized constraint weights and target from raw survey weights:
///   w_ij = w*_ij / sum_j w*_ij,   eta_i = sum_j w*_ij / sum_ij w*_ij,
///   p    = sum_ij w*_ij y_ij / sum_ij w*_ij.
/// Throws invalid_input_error if any area has nonpositive total weight.
ConstraintWeights constraint_weights_from_survey(const SurveyDataset& data);

/// Build loss weights for a scheme. InverseVariance and DomainWeighted need
/// problem.posterior with strictly positive variances; Raked needs all Bayes
/// estimates positive and g > max_i 1/eta_i.
LossWeights make_loss_weights(const LossScheme& scheme, const BenchmarkProblem& problem);

/// Report every violated invariant of a BenchmarkProblem. Empty result means
/// the problem is well formed. Messages use 1-based area/unit indices.
/// Weight sums are accepted up to drift 1e-6 (smaller drifts are repaired by
/// renormalize_weights; see below).
std::vector<std::string> validate_problem(const BenchmarkProblem& problem);

/// Repair weight normalization drift. Sums within 1e-6 of 1 are rescaled to
/// exact normalization and reported as warnings when the drift exceeds 1e-12;
/// larger drift throws invalid_input_error.
std::vector<std::string> renormalize_weights(ConstraintWeights& weights);

/// thetabar_iw = sum_j w_ij estimates_ij, one value per area.
std::vector<double> weighted_area_means(const std::vector<std::vector<double>>& estimates,
                                        const ConstraintWeights& constraint);

/// thetatilde_w = sum_i eta_i sum_j w_ij estimates_ij.
double weighted_grand_mean(const std::vector<std::vector<double>>& estimates,
                           const ConstraintWeights& constraint);

/// Sizes n_i of each area taken from the unit-weight layout.
std::vector<std::size_t> area_sizes(const ConstraintWeights& constraint);

}  // namespace sabench

#endif
