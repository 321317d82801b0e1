#pragma once

#include <cstdint>
#include <vector>

#include "core/quantum.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

namespace pmproc {

struct OptConfig {
  long t_max = 10000;
  double step = 1e-2;
  int restarts = 1;
  std::uint64_t seed = 0;
  /// Early-stop threshold on the gradient Frobenius norm; 0 disables it and
  /// reproduces the fixed-horizon schedule.
  double grad_tol = 0.0;

  void validate() const;
};

struct OptTrace {
  std::vector<double> values;  // objective at every iterate, index 0 = U0
  double best_value = 0.0;
  Matrix best_unitary;
  long best_iter = 0;
  double final_grad_norm = 0.0;
};

/// Projection of the objective's gradient onto the tangent space at U:
/// [rho, P[tau]] + [tau, P[rho]] with P the measurement rotated by U.
/// Skew-Hermitian; the directional derivative of the objective along a skew
/// A at U equals Re tr(G^dag A).
Matrix riemannian_gradient(const Matrix& u, const DensityMatrix& rho,
                           const DensityMatrix& tau);

/// Polar retraction: the unitary factor of U + step * direction * U,
/// computed by SVD with all singular values replaced by 1.
Matrix retract(const Matrix& u, const Matrix& direction, double step);

/// Projected gradient ascent with a constant step. Deterministic for fixed
/// inputs; every iterate is re-projected onto the unitary group.
OptTrace ascend(const DensityMatrix& rho, const DensityMatrix& tau,
                const Matrix& u0, const OptConfig& cfg);

struct RestartOutcome {
  double best_value = 0.0;
  long best_iter = 0;
  double final_grad_norm = 0.0;
  double stationarity_residual = 0.0;
  std::int64_t wall_ms = 0;
};

/// Empirical suboptimality-ratio estimate for one sampled (rho, tau) pair:
/// best ascent value over the full space divided by the best over the
/// subspace, each taken over independent restarts.
struct KEstimate {
  int n = 0;
  int r = 0;
  std::uint64_t seed = 0;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
  std::vector<RestartOutcome> full_runs;      // ascents over U(n)
  std::vector<RestartOutcome> subspace_runs;  // ascents over U(r)
};

/// Runs cfg.restarts ascents on each side. Full-space starts are Haar on
/// the subspace block and identity on its complement; subspace starts are
/// Haar on U(r). Restart i uses the same derived stream on both sides, so
/// r == n reproduces the identical search and yields ratio 1.
KEstimate estimate_k(int n, int r, const OptConfig& cfg, Rng& rng);

/// Same, with separate restart budgets for the two sides.
KEstimate estimate_k(int n, int r, const OptConfig& cfg, int restarts_full,
                     int restarts_sub, Rng& rng);

}  // namespace pmproc
