#pragma once

#include <cstdint>
#include <vector>

#include "core/frames.hpp"
#include "core/quantum.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"
#include "core/types.hpp"

namespace pmproc {

/// One draw of the Gaussian weight sum_t g_t L_t with i.i.d. real standard
/// normal coefficients.
struct GaussianWeightSample {
  Matrix matrix;
  std::vector<double> coefficients;
};

/// Monte-Carlo comparison of an exact left side against a sampled right
/// side; pass uses a 3-sigma one-sided slack on the mean.
struct MCReport {
  double lhs = 0.0;
  double rhs_mean = 0.0;
  double rhs_std_error = 0.0;
  std::int64_t samples = 0;
  bool pass = false;
  std::uint64_t seed = 0;
};

/// Empirical tail of the Gaussian weight's operator norm against the
/// matrix-Gaussian bound min(1, 2r exp(-l^2 / nu)).
struct TailReport {
  std::vector<double> levels;
  std::vector<double> empirical_tail;
  std::vector<double> bound;
  int violations = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

GaussianWeightSample sample_lhat(const WeightList& wl, Rng& rng);

/// nu = max(||sum_t L_t L_t^dag||, ||sum_t L_t^dag L_t||). The first term is
/// the identity for any weight list built from a frame, so nu >= 1 up to
/// the frame tolerance.
double variance_statistic(const WeightList& wl);

/// Checks sum_t tr(rho Q_{L_t}[tau]) <= 3 E tr(rho Q_{Lhat}[tau]) by Monte
/// Carlo; the left side is exact.
MCReport verify_factor3(const WeightList& wl, const ProjectiveMeasurement& q,
                        const DensityMatrix& rho, const DensityMatrix& tau,
                        std::int64_t samples, Rng& rng);

/// Empirical P(||Lhat|| > level) for each level, with violations counted
/// beyond a 3-sigma binomial slack above the bound.
TailReport empirical_tail(const WeightList& wl,
                          const std::vector<double>& levels,
                          std::int64_t samples, Rng& rng);

/// Monte-Carlo estimate of E ||Lhat||^4.
MomentEstimate estimate_fourth_moment(const WeightList& wl,
                                      std::int64_t samples, Rng& rng);

/// Exact expectation of the biweighted measurement over two independent
/// Gaussian weights: sum_{t,z} sum_i tr(rho L_t Q_i L_t^dag) tr(tau L_z Q_i
/// L_z^dag).
double biweighted_expectation_exact(const WeightList& wl,
                                    const ProjectiveMeasurement& q,
                                    const DensityMatrix& rho,
                                    const DensityMatrix& tau);

}  // namespace pmproc
