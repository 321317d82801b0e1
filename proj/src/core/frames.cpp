#include "core/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pmproc {

namespace {

Matrix frame_gram_identity(const std::vector<Vector>& vectors, int r) {
  Matrix acc = Matrix::Zero(r, r);
  for (const auto& v : vectors) acc += v * v.adjoint();
  return acc;
}

std::vector<std::size_t> identity_perm(std::size_t m) {
  std::vector<std::size_t> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  return p;
}

void shuffle_in_place(std::vector<std::size_t>& p, Rng& rng) {
  for (std::size_t i = p.size(); i > 1; --i) {
    std::size_t j = rng.uniform_below(i);
    std::swap(p[i - 1], p[j]);
  }
}

double trace_power(const Matrix& hermitian, int k) {
  if (k == 1) return hermitian.trace().real();
  if (k == 2) return hermitian.squaredNorm();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hermitian, Eigen::EigenvaluesOnly);
  double total = 0.0;
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    total += std::pow(eig.eigenvalues()[i], k);
  }
  return total;
}

}  // namespace

double ParsevalFrame::total_weight() const {
  double total = 0.0;
  for (const auto& v : vectors) total += v.squaredNorm();
  return total;
}

double ParsevalFrame::identity_residual() const {
  return (frame_gram_identity(vectors, r) - Matrix::Identity(r, r)).norm();
}

ParsevalFrame ParsevalFrame::validated(int r, std::vector<Vector> vectors) {
  if (r < 1) throw Error(ErrorCode::invalid_dimension, "frame dimension must be >= 1");
  if (vectors.empty() || vectors.size() % static_cast<std::size_t>(r) != 0) {
    throw Error(ErrorCode::shape_error,
                "frame size must be a positive multiple of r");
  }
  for (const auto& v : vectors) {
    if (v.size() != r) {
      throw Error(ErrorCode::shape_error, "frame vector has wrong dimension");
    }
    if (v.norm() > 1.0 + 1e-10) {
      throw Error(ErrorCode::domain_error,
                  "frame vector norm exceeds 1; not a Parseval frame");
    }
  }
  ParsevalFrame frame{r, std::move(vectors)};
  if (frame.identity_residual() > tol::frame) {
    throw Error(ErrorCode::domain_error,
                "frame vectors do not resolve the identity");
  }
  if (std::abs(frame.total_weight() - r) > tol::frame) {
    throw Error(ErrorCode::domain_error, "frame weight differs from r");
  }
  return frame;
}

ParsevalFrame project_frame(const ProjectiveMeasurement& pm,
                            const Subspace& s) {
  const int n = pm.dim();
  const int r = s.sub_dim();
  if (s.ambient_dim() != n) {
    throw Error(ErrorCode::shape_error,
                "measurement and subspace live in different spaces");
  }
  const int tiles = (n + r - 1) / r;
  std::vector<Vector> vectors;
  vectors.reserve(static_cast<std::size_t>(tiles) * r);
  for (int i = 0; i < n; ++i) {
    vectors.push_back(s.isometry.adjoint() * pm.basis.col(i));
  }
  for (int i = n; i < tiles * r; ++i) {
    vectors.push_back(Vector::Zero(r));
  }
  return ParsevalFrame{r, std::move(vectors)};
}

WeightList build_weights(const ParsevalFrame& frame,
                         const std::vector<std::size_t>& perm,
                         const std::vector<double>& phases) {
  const std::size_t m = static_cast<std::size_t>(frame.m());
  if (phases.size() != m) {
    throw Error(ErrorCode::shape_error, "phase vector must have one entry per frame vector");
  }
  if (perm.size() != m) {
    throw Error(ErrorCode::invalid_permutation, "permutation has wrong length");
  }
  std::vector<bool> seen(m, false);
  for (std::size_t idx : perm) {
    if (idx >= m || seen[idx]) {
      throw Error(ErrorCode::invalid_permutation,
                  "permutation is not a bijection of the frame labels");
    }
    seen[idx] = true;
  }
  const int r = frame.r;
  WeightList wl;
  wl.r = r;
  wl.perm = perm;
  wl.phases = phases;
  wl.weights.reserve(frame.tiles());
  for (int t = 0; t < frame.tiles(); ++t) {
    Matrix lt(r, r);
    for (int l = 0; l < r; ++l) {
      std::size_t src = perm[static_cast<std::size_t>(t) * r + l];
      lt.col(l) = std::exp(Complex(0.0, phases[src])) * frame.vectors[src];
    }
    wl.weights.push_back(std::move(lt));
  }
  return wl;
}

double partition_identity_residual(const WeightList& wl) {
  Matrix acc = Matrix::Zero(wl.r, wl.r);
  for (const auto& lt : wl.weights) acc += lt * lt.adjoint();
  return (acc - Matrix::Identity(wl.r, wl.r)).norm();
}

double decomposition_residual(const ProjectiveMeasurement& pm,
                              const Subspace& s, const WeightList& wl,
                              const DensityMatrix& rho,
                              const DensityMatrix& tau) {
  if (wl.r != s.sub_dim()) {
    throw Error(ErrorCode::shape_error,
                "weight list dimension differs from the subspace");
  }
  double lhs = objective(pm, rho, tau);
  DensityMatrix rho_s = restrict_state(rho, s);
  DensityMatrix tau_s = restrict_state(tau, s);
  ProjectiveMeasurement canon = ProjectiveMeasurement::canonical(wl.r);
  double rhs = 0.0;
  for (const auto& lt : wl.weights) {
    rhs += weighted_objective(canon, lt, rho_s, tau_s);
  }
  return std::abs(lhs - rhs) / std::max(lhs, 1e-15);
}

Matrix variance_matrix(const WeightList& wl) {
  Matrix acc = Matrix::Zero(wl.r, wl.r);
  for (const auto& lt : wl.weights) acc += lt.adjoint() * lt;
  return 0.5 * (acc + acc.adjoint().eval());
}

Matrix partition_variance(const ParsevalFrame& frame,
                          const std::vector<std::size_t>& perm,
                          const std::vector<double>& phases) {
  const int r = frame.r;
  Matrix acc = Matrix::Zero(r, r);
  Matrix tile(r, r);
  for (int t = 0; t < frame.tiles(); ++t) {
    for (int l = 0; l < r; ++l) {
      std::size_t src = perm[static_cast<std::size_t>(t) * r + l];
      tile.col(l) = std::exp(Complex(0.0, phases[src])) * frame.vectors[src];
    }
    acc += tile.adjoint() * tile;
  }
  return acc;
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (!m.allFinite()) {
    throw Error(ErrorCode::domain_error, "operator_norm of non-finite matrix");
  }
  if (std::max(m.rows(), m.cols()) <= 64) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
  }
  // Power iteration on M^dag M from a fixed start vector.
  Vector v = Vector::Ones(m.cols());
  v /= v.norm();
  double sigma_sq = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vector w = m.adjoint() * (m * v);
    double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - sigma_sq) <= 1e-12 * std::max(1.0, next)) {
      sigma_sq = next;
      break;
    }
    sigma_sq = next;
  }
  return std::sqrt(sigma_sq);
}

PartitionSearchResult search_partition(const ParsevalFrame& frame, long budget,
                                       Rng& rng) {
  if (budget < 1) {
    throw Error(ErrorCode::domain_error, "search budget must be >= 1");
  }
  const std::size_t m = static_cast<std::size_t>(frame.m());
  PartitionSearchResult result;
  result.seed = rng.seed();
  result.samples_tried = budget;
  result.best_perm = identity_perm(m);
  result.best_phases.assign(m, 0.0);
  result.initial_opnorm = operator_norm(
      partition_variance(frame, result.best_perm, result.best_phases));
  result.best_opnorm = result.initial_opnorm;

  std::vector<std::size_t> perm = identity_perm(m);
  std::vector<double> phases(m, 0.0);
  for (long i = 1; i < budget; ++i) {
    shuffle_in_place(perm, rng);
    for (auto& phi : phases) phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double norm = operator_norm(partition_variance(frame, perm, phases));
    if (norm < result.best_opnorm) {
      result.best_opnorm = norm;
      result.best_perm = perm;
      result.best_phases = phases;
    }
  }
  return result;
}

MomentEstimate estimate_fk(const ParsevalFrame& frame, int k, long samples,
                           Rng& rng) {
  if (k < 1) throw Error(ErrorCode::domain_error, "moment order must be >= 1");
  if (samples < 1) throw Error(ErrorCode::domain_error, "need at least one sample");
  if (k == 1) {
    // tr(V) = sum_i |v_i|^2 for every permutation and phase choice.
    return MomentEstimate{frame.total_weight(), 0.0, samples};
  }
  const std::size_t m = static_cast<std::size_t>(frame.m());
  std::vector<std::size_t> perm = identity_perm(m);
  std::vector<double> phases(m, 0.0);
  RunningStat stat;
  for (long s = 0; s < samples; ++s) {
    shuffle_in_place(perm, rng);
    for (auto& phi : phases) phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    stat.add(trace_power(partition_variance(frame, perm, phases), k));
  }
  return MomentEstimate{stat.mean(), stat.std_error(), stat.count};
}

double moment_bound_reference(int r, int k, int tiles) {
  if (r < 2 || tiles < 2 || k < 1 || k > r) {
    throw Error(ErrorCode::domain_error,
                "moment bound requires r >= 2, T >= 2, 1 <= k <= r");
  }
  double kd = static_cast<double>(k);
  double factorial = std::tgamma(kd + 1.0);
  return r * std::pow(kd, kd) +
         factorial * std::pow(kd, 2.0 * kd) * std::pow(double(r), kd) / tiles;
}

}  // namespace pmproc
