#include "sabench/core.hpp"

#include <cmath>
#include <sstream>

#include "sabench/errors.hpp"

namespace sabench {

namespace {

constexpr double kNormalizationDrift = 1e-6;   // beyond this: reject
constexpr double kNormalizationExact = 1e-12;  // below this: already exact

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ConstraintWeights constraint_weights_from_survey(const SurveyDataset& data) {
  if (data.areas.empty()) throw invalid_input_error("dataset has no areas");

  ConstraintWeights out;
  out.unit_weights.resize(data.areas.size());
  out.area_weights.resize(data.areas.size());

  double grand_total = 0.0;
  double weighted_response = 0.0;
  for (std::size_t i = 0; i < data.areas.size(); ++i) {
    const auto& area = data.areas[i];
    if (area.units.empty())
      throw invalid_input_error("area " + std::to_string(i + 1) + " (" + area.area_id +
                                ") has no units");
    double total = 0.0;
    for (const auto& unit : area.units) {
      if (!(unit.survey_weight > 0.0))
        throw invalid_input_error("nonpositive survey weight for unit " + unit.unit_id +
                                  " in area " + area.area_id);
      total += unit.survey_weight;
      weighted_response += unit.survey_weight * unit.response;
    }
    if (!(total > 0.0))
      throw invalid_input_error("zero total weight in area " + area.area_id);

    out.unit_weights[i].reserve(area.units.size());
    for (const auto& unit : area.units)
      out.unit_weights[i].push_back(unit.survey_weight / total);
    out.area_weights[i] = total;
    grand_total += total;
  }

  for (auto& eta : out.area_weights) eta /= grand_total;
  out.target = weighted_response / grand_total;
  return out;
}

std::vector<std::string> renormalize_weights(ConstraintWeights& weights) {
  std::vector<std::string> warnings;

  for (std::size_t i = 0; i < weights.unit_weights.size(); ++i) {
    double sum = 0.0;
    for (double w : weights.unit_weights[i]) sum += w;
    const double drift = std::abs(sum - 1.0);
    if (drift > kNormalizationDrift)
      throw invalid_input_error("unit weights of area " + std::to_string(i + 1) +
                                " sum to " + fmt(sum) + "; drift exceeds 1e-6");
    if (drift > kNormalizationExact) {
      for (double& w : weights.unit_weights[i]) w /= sum;
      warnings.push_back("renormalized unit weights of area " + std::to_string(i + 1) +
                         " (sum was " + fmt(sum) + ")");
    }
  }

  double eta_sum = 0.0;
  for (double e : weights.area_weights) eta_sum += e;
  const double drift = std::abs(eta_sum - 1.0);
  if (drift > kNormalizationDrift)
    throw invalid_input_error("area weights sum to " + fmt(eta_sum) +
                              "; drift exceeds 1e-6");
  if (drift > kNormalizationExact) {
    for (double& e : weights.area_weights) e /= eta_sum;
    warnings.push_back("renormalized area weights (sum was " + fmt(eta_sum) + ")");
  }
  return warnings;
}

std::vector<double> weighted_area_means(const std::vector<std::vector<double>>& estimates,
                                        const ConstraintWeights& constraint) {
  std::vector<double> means(estimates.size(), 0.0);
  for (std::size_t i = 0; i < estimates.size(); ++i)
    for (std::size_t j = 0; j < estimates[i].size(); ++j)
      means[i] += constraint.unit_weights[i][j] * estimates[i][j];
  return means;
}

double weighted_grand_mean(const std::vector<std::vector<double>>& estimates,
                           const ConstraintWeights& constraint) {
  const auto means = weighted_area_means(estimates, constraint);
  double grand = 0.0;
  for (std::size_t i = 0; i < means.size(); ++i)
    grand += constraint.area_weights[i] * means[i];
  return grand;
}

std::vector<std::size_t> area_sizes(const ConstraintWeights& constraint) {
  std::vector<std::size_t> sizes;
  sizes.reserve(constraint.unit_weights.size());
  for (const auto& w : constraint.unit_weights) sizes.push_back(w.size());
  return sizes;
}

LossWeights make_loss_weights(const LossScheme& scheme, const BenchmarkProblem& problem) {
  const auto& cw = problem.constraint;
  const std::size_t m = problem.bayes_estimates.size();
  LossWeights out;
  out.unit_loss.resize(m);
  out.area_loss.resize(m);

  const auto need_posterior = [&]() -> const PosteriorSummary& {
    if (!problem.posterior)
      throw missing_input_error("loss scheme requires a posterior summary");
    return *problem.posterior;
  };

  switch (scheme.kind) {
    case LossScheme::Kind::Constant: {
      for (std::size_t i = 0; i < m; ++i) {
        out.unit_loss[i].assign(problem.bayes_estimates[i].size(), 1.0);
        out.area_loss[i] = 1.0;
      }
      break;
    }
    case LossScheme::Kind::InverseVariance:
    case LossScheme::Kind::DomainWeighted: {
      const auto& post = need_posterior();
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t n = problem.bayes_estimates[i].size();
        out.unit_loss[i].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
          const double v = post.var_theta[i][j];
          if (!(v > 0.0))
            throw invalid_input_error("nonpositive posterior variance for unit " +
                                      std::to_string(j + 1) + " of area " +
                                      std::to_string(i + 1));
          out.unit_loss[i][j] = 1.0 / v;
        }
        const double va = post.var_area[i];
        if (!(va > 0.0))
          throw invalid_input_error("nonpositive posterior area variance for area " +
                                    std::to_string(i + 1));
        out.area_loss[i] = 1.0 / va;
        if (scheme.kind == LossScheme::Kind::DomainWeighted)
          out.area_loss[i] *= static_cast<double>(n);
      }
      break;
    }
    case LossScheme::Kind::Raked: {
      double max_inv_eta = 0.0;
      for (double eta : cw.area_weights) {
        if (!(eta > 0.0))
          throw invalid_input_error("raked scheme requires positive area weights");
        max_inv_eta = std::max(max_inv_eta, 1.0 / eta);
      }
      const double g = scheme.raking_g.value_or(2.0 * max_inv_eta);
      if (!(g > max_inv_eta))
        throw invalid_input_error("raking g = " + fmt(g) +
                                  " must exceed max_i 1/eta_i = " + fmt(max_inv_eta));
      const auto abar = weighted_area_means(problem.bayes_estimates, cw);
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t n = problem.bayes_estimates[i].size();
        out.unit_loss[i].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
          const double b = problem.bayes_estimates[i][j];
          if (!(b > 0.0))
            throw invalid_input_error("raked scheme requires positive Bayes estimates; "
                                      "unit " + std::to_string(j + 1) + " of area " +
                                      std::to_string(i + 1) + " is " + fmt(b));
          out.unit_loss[i][j] = cw.unit_weights[i][j] / b;
        }
        out.area_loss[i] = (g * cw.area_weights[i] - 1.0) / abar[i];
      }
      break;
    }
  }
  return out;
}

std::vector<std::string> validate_problem(const BenchmarkProblem& problem) {
  std::vector<std::string> violations;
  const auto& cw = problem.constraint;
  const std::size_t m = problem.bayes_estimates.size();

  if (cw.unit_weights.size() != m || cw.area_weights.size() != m ||
      problem.loss.unit_loss.size() != m || problem.loss.area_loss.size() != m) {
    violations.push_back("area counts of estimates, weights, and loss weights disagree");
    return violations;
  }

  double eta_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n = problem.bayes_estimates[i].size();
    if (n == 0) violations.push_back("area " + std::to_string(i + 1) + " has no units");
    if (cw.unit_weights[i].size() != n || problem.loss.unit_loss[i].size() != n) {
      violations.push_back("unit counts of area " + std::to_string(i + 1) + " disagree");
      continue;
    }

    double wsum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = cw.unit_weights[i][j];
      if (w < 0.0)
        violations.push_back("negative unit weight for unit " + std::to_string(j + 1) +
                             " of area " + std::to_string(i + 1));
      wsum += w;
      if (!(problem.loss.unit_loss[i][j] > 0.0))
        violations.push_back("nonpositive loss weight for unit " + std::to_string(j + 1) +
                             " of area " + std::to_string(i + 1));
      if (!std::isfinite(problem.bayes_estimates[i][j]))
        violations.push_back("nonfinite Bayes estimate for unit " + std::to_string(j + 1) +
                             " of area " + std::to_string(i + 1));
    }
    if (std::abs(wsum - 1.0) > kNormalizationDrift)
      violations.push_back("unit weights of area " + std::to_string(i + 1) + " sum to " +
                           fmt(wsum));

    if (cw.area_weights[i] < 0.0)
      violations.push_back("negative area weight for area " + std::to_string(i + 1));
    eta_sum += cw.area_weights[i];

    // Psi_i = A_i + phi_i w_i w_i^T must stay positive definite:
    // 1 + phi_i s_i > 0 with s_i = sum_j w_ij^2 / xi_ij.
    if (problem.loss.unit_loss[i].size() == n && cw.unit_weights[i].size() == n) {
      double s = 0.0;
      bool s_ok = true;
      for (std::size_t j = 0; j < n; ++j) {
        const double xi = problem.loss.unit_loss[i][j];
        if (!(xi > 0.0)) {
          s_ok = false;
          break;
        }
        s += cw.unit_weights[i][j] * cw.unit_weights[i][j] / xi;
      }
      if (s_ok && !(1.0 + problem.loss.area_loss[i] * s > 0.0))
        violations.push_back("1 + phi_i s_i = " +
                             fmt(1.0 + problem.loss.area_loss[i] * s) +
                             " is not positive for area " + std::to_string(i + 1));
    }
  }
  if (std::abs(eta_sum - 1.0) > kNormalizationDrift)
    violations.push_back("area weights sum to " + fmt(eta_sum));

  if (!std::isfinite(cw.target))
    violations.push_back("target p is not finite");

  if (problem.posterior) {
    const auto& post = *problem.posterior;
    if (post.mean_theta.size() != m || post.var_theta.size() != m)
      violations.push_back("posterior summary area count disagrees with problem");
  }
  return violations;
}

}  // namespace sabench
