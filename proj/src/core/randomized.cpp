#include "core/randomized.hpp"

#include <algorithm>
#include <cmath>

namespace pmproc {

namespace {

void require_min_samples(std::int64_t samples, std::int64_t minimum) {
  if (samples < minimum) {
    throw Error(ErrorCode::domain_error,
                "need at least " + std::to_string(minimum) + " samples");
  }
}

}  // namespace

GaussianWeightSample sample_lhat(const WeightList& wl, Rng& rng) {
  GaussianWeightSample out;
  out.coefficients.reserve(wl.tiles());
  out.matrix = Matrix::Zero(wl.r, wl.r);
  for (const auto& lt : wl.weights) {
    double g = rng.normal();
    out.coefficients.push_back(g);
    out.matrix += g * lt;
  }
  return out;
}

double variance_statistic(const WeightList& wl) {
  Matrix left = Matrix::Zero(wl.r, wl.r);
  for (const auto& lt : wl.weights) left += lt * lt.adjoint();
  return std::max(operator_norm(left), operator_norm(variance_matrix(wl)));
}

MCReport verify_factor3(const WeightList& wl, const ProjectiveMeasurement& q,
                        const DensityMatrix& rho, const DensityMatrix& tau,
                        std::int64_t samples, Rng& rng) {
  require_min_samples(samples, 100);
  MCReport report;
  report.seed = rng.seed();
  report.samples = samples;
  report.lhs = 0.0;
  for (const auto& lt : wl.weights) {
    report.lhs += weighted_objective(q, lt, rho, tau);
  }
  RunningStat stat;
  for (std::int64_t s = 0; s < samples; ++s) {
    GaussianWeightSample lhat = sample_lhat(wl, rng);
    stat.add(weighted_objective(q, lhat.matrix, rho, tau));
  }
  report.rhs_mean = stat.mean();
  report.rhs_std_error = stat.std_error();
  report.pass =
      report.lhs <= 3.0 * (report.rhs_mean + 3.0 * report.rhs_std_error);
  return report;
}

TailReport empirical_tail(const WeightList& wl,
                          const std::vector<double>& levels,
                          std::int64_t samples, Rng& rng) {
  require_min_samples(samples, 1000);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0.0 || (i > 0 && levels[i] <= levels[i - 1])) {
      throw Error(ErrorCode::domain_error,
                  "levels must be nonnegative and strictly increasing");
    }
  }
  TailReport report;
  report.seed = rng.seed();
  report.samples = samples;
  report.levels = levels;

  std::vector<std::int64_t> exceed(levels.size(), 0);
  for (std::int64_t s = 0; s < samples; ++s) {
    double norm = operator_norm(sample_lhat(wl, rng).matrix);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (norm > levels[i]) ++exceed[i];
    }
  }

  const double nu = variance_statistic(wl);
  report.empirical_tail.resize(levels.size());
  report.bound.resize(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    report.empirical_tail[i] =
        static_cast<double>(exceed[i]) / static_cast<double>(samples);
    double b = 2.0 * wl.r * std::exp(-levels[i] * levels[i] / nu);
    report.bound[i] = std::min(1.0, b);
    double slack =
        3.0 * std::sqrt(report.bound[i] * (1.0 - report.bound[i]) /
                        static_cast<double>(samples)) +
        3.0 / static_cast<double>(samples);
    if (report.empirical_tail[i] > report.bound[i] + slack) {
      ++report.violations;
    }
  }
  return report;
}

MomentEstimate estimate_fourth_moment(const WeightList& wl,
                                      std::int64_t samples, Rng& rng) {
  require_min_samples(samples, 1000);
  RunningStat stat;
  for (std::int64_t s = 0; s < samples; ++s) {
    double norm = operator_norm(sample_lhat(wl, rng).matrix);
    stat.add(norm * norm * norm * norm);
  }
  return MomentEstimate{stat.mean(), stat.std_error(), stat.count};
}

double biweighted_expectation_exact(const WeightList& wl,
                                    const ProjectiveMeasurement& q,
                                    const DensityMatrix& rho,
                                    const DensityMatrix& tau) {
  double total = 0.0;
  for (const auto& lt : wl.weights) {
    for (const auto& lz : wl.weights) {
      total += biweighted_objective(q, lt, lz, rho, tau);
    }
  }
  return total;
}

}  // namespace pmproc
