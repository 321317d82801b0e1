#pragma once

#include <cstdint>
#include <vector>

#include "core/quantum.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"
#include "core/types.hpp"

namespace pmproc {

/// m = T*r vectors in dimension r with sum_i |v_i><v_i| = identity,
/// zero-padded when r does not divide the ambient dimension.
struct ParsevalFrame {
  int r = 0;
  std::vector<Vector> vectors;

  int m() const { return static_cast<int>(vectors.size()); }
  int tiles() const { return m() / r; }
  /// Sum of squared vector norms; equals r for a Parseval frame.
  double total_weight() const;
  double identity_residual() const;
  static ParsevalFrame validated(int r, std::vector<Vector> vectors);
};

/// Equipartition weights L_t built from a frame, a permutation of its
/// labels, and per-vector phases. Satisfies sum_t L_t L_t^dag = identity
/// for every permutation and phase choice.
struct WeightList {
  int r = 0;
  std::vector<Matrix> weights;
  std::vector<std::size_t> perm;
  std::vector<double> phases;

  int tiles() const { return static_cast<int>(weights.size()); }
};

struct PartitionSearchResult {
  std::vector<std::size_t> best_perm;
  std::vector<double> best_phases;
  double best_opnorm = 0.0;
  double initial_opnorm = 0.0;
  long samples_tried = 0;
  std::uint64_t seed = 0;
};

/// Projects the measurement's basis vectors onto the subspace, padding with
/// null vectors up to a multiple of r.
ParsevalFrame project_frame(const ProjectiveMeasurement& pm, const Subspace& s);

/// L_t column l = e^{i theta_perm(rt+l)} v_perm(rt+l).
WeightList build_weights(const ParsevalFrame& frame,
                         const std::vector<std::size_t>& perm,
                         const std::vector<double>& phases);

/// ||sum_t L_t L_t^dag - I||_F, the partition-of-unity residual.
double partition_identity_residual(const WeightList& wl);

/// Relative gap between tr(rho P[tau]) on the ambient space and the sum of
/// weighted canonical measurements on the subspace; zero in exact
/// arithmetic for any permutation and phases. States are supplied at the
/// ambient dimension, supported on s.
double decomposition_residual(const ProjectiveMeasurement& pm,
                              const Subspace& s, const WeightList& wl,
                              const DensityMatrix& rho,
                              const DensityMatrix& tau);

/// sum_t L_t^dag L_t, the variance matrix of the equipartition. Hermitian
/// PSD with trace r for every permutation and phase choice.
Matrix variance_matrix(const WeightList& wl);

/// Variance matrix of a (perm, phases) candidate computed directly from the
/// frame, without materializing the weight matrices.
Matrix partition_variance(const ParsevalFrame& frame,
                          const std::vector<std::size_t>& perm,
                          const std::vector<double>& phases);

/// Largest singular value. Dense SVD up to dimension 64, power iteration
/// beyond.
double operator_norm(const Matrix& m);

/// Randomized search over uniform (perm, phases) pairs for a small
/// variance-matrix operator norm. The identity/zero candidate is always
/// evaluated first, so the best never regresses past the initial value.
PartitionSearchResult search_partition(const ParsevalFrame& frame, long budget,
                                       Rng& rng);

/// Monte-Carlo estimate of E tr(V^k) over uniform permutations and phases,
/// where V is the variance matrix. k = 1 is deterministic (the trace is
/// permutation- and phase-invariant) and returns zero standard error.
MomentEstimate estimate_fk(const ParsevalFrame& frame, int k, long samples,
                           Rng& rng);

/// Closed-form reference bracket r k^k + k! k^{2k} r^k / T for the k-th
/// moment (the unknown universal constant is omitted).
double moment_bound_reference(int r, int k, int tiles);

}  // namespace pmproc
