#pragma once

#include <Eigen/Dense>

#include "core/rng.hpp"
#include "core/types.hpp"

namespace pmproc {

/// Hermitian, positive-semidefinite, trace-one state. Rank-deficient
/// states are allowed; the low-rank experiments depend on them.
struct DensityMatrix {
  Matrix mat;

  int dim() const { return static_cast<int>(mat.rows()); }
  /// Validates hermiticity (1e-10 relative), PSD (min eigenvalue >= -1e-10)
  /// and unit trace (1e-10).
  static DensityMatrix validated(Matrix m);
};

/// A projective measurement with n rank-one outcomes, stored as the unitary
/// whose column i spans projector i. Unitarity is the single invariant;
/// orthogonality and completeness of the projectors follow from it.
struct ProjectiveMeasurement {
  Matrix basis;

  int dim() const { return static_cast<int>(basis.rows()); }
  static ProjectiveMeasurement canonical(int dim);
  static ProjectiveMeasurement validated(Matrix u);
};

/// An r-dimensional subspace of an n-dimensional space, held as an n x r
/// isometry. The canonical choice (first r coordinates) is the default in
/// every experiment.
struct Subspace {
  Matrix isometry;

  int ambient_dim() const { return static_cast<int>(isometry.rows()); }
  int sub_dim() const { return static_cast<int>(isometry.cols()); }
  static Subspace canonical(int n, int r);
  static Subspace validated(Matrix v);
};

/// Outcome probabilities p_i = tr(P_i rho) of measuring a state.
struct OutcomeDistribution {
  RealVector probabilities;
  ProjectiveMeasurement measurement;
};

/// Uniform sample from the probability simplex (normalized exponentials).
RealVector random_simplex(int dim, Rng& rng);

/// W Diag(d) W^dag with W Haar unitary and d uniform on the simplex.
DensityMatrix random_density(int dim, Rng& rng);

/// Haar-distributed unitary: complex Ginibre matrix, QR, and the phase
/// correction that makes the distribution left-invariant.
ProjectiveMeasurement haar_unitary(int dim, Rng& rng);

OutcomeDistribution outcomes(const ProjectiveMeasurement& pm,
                             const DensityMatrix& rho);

/// sum_i tr(tau P_i rho P_i) = sum_i tr(P_i rho) tr(P_i tau), in [0, 1].
double objective(const ProjectiveMeasurement& pm, const DensityMatrix& rho,
                 const DensityMatrix& tau);

/// Expected post-measurement state sum_i P_i rho P_i (dephasing in the
/// measurement basis).
Matrix apply_pm(const ProjectiveMeasurement& pm, const DensityMatrix& rho);

/// Weighted measurement value sum_i tr(rho L Q_i L^dag tau L Q_i L^dag).
/// Degree-4 homogeneous in L and nonnegative.
double weighted_objective(const ProjectiveMeasurement& q, const Matrix& weight,
                          const DensityMatrix& rho, const DensityMatrix& tau);

/// Biweighted value sum_i tr(rho L Q_i L^dag) tr(tau B Q_i B^dag).
double biweighted_objective(const ProjectiveMeasurement& q, const Matrix& lw,
                            const Matrix& bw, const DensityMatrix& rho,
                            const DensityMatrix& tau);

/// Frobenius norm of [rho, P[tau]] - [P[rho], tau]; zero exactly at the
/// first-order critical points of the objective.
double stationarity_residual(const ProjectiveMeasurement& pm,
                             const DensityMatrix& rho,
                             const DensityMatrix& tau);

/// Completes an isometry to a full unitary and returns the complement
/// columns, phase-normalized so canonical inputs give canonical outputs.
Matrix complement_basis(const Matrix& isometry);

/// Injects a measurement on the subspace into the ambient space, filling
/// the orthogonal complement with a fixed measurement of dimension n - r.
/// Preserves the objective for states supported on the subspace.
ProjectiveMeasurement embed_pm(const ProjectiveMeasurement& q,
                               const Subspace& s,
                               const ProjectiveMeasurement& complement);

/// V rho V^dag: a subspace state expressed in the ambient space.
DensityMatrix embed_state(const DensityMatrix& rho, const Subspace& s);

/// V^dag rho V: restriction of an ambient state supported on s.
DensityMatrix restrict_state(const DensityMatrix& rho, const Subspace& s);

}  // namespace pmproc
