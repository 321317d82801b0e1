#include "core/manifold.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/SVD>

namespace pmproc {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::shape_error,
                std::string("dimension mismatch in ") + what + ": " +
                    std::to_string(a) + " vs " + std::to_string(b));
  }
}

/// Commutator with a real diagonal matrix: ([M, diag(d)])_ij = M_ij (d_j - d_i).
Matrix commutator_with_diag(const Matrix& m, const RealVector& d) {
  const int n = static_cast<int>(m.rows());
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = m(i, j) * (d[j] - d[i]);
    }
  }
  return out;
}

Matrix polar_factor(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  double smin = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
  if (smax <= 0.0 || smin < 1e-12 * std::max(1.0, smax)) {
    throw Error(ErrorCode::degenerate_retraction,
                "retraction target is (numerically) rank deficient");
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// Gradient in the frame rotated by U, from A = U^dag rho U and B = U^dag tau U.
/// Equals U^dag G U for the ambient gradient G.
Matrix rotated_gradient(const Matrix& a, const Matrix& b) {
  RealVector da = a.diagonal().real();
  RealVector db = b.diagonal().real();
  return commutator_with_diag(a, db) + commutator_with_diag(b, da);
}

}  // namespace

void OptConfig::validate() const {
  if (t_max < 1) throw Error(ErrorCode::invalid_config, "t_max must be >= 1");
  if (!(step > 0.0)) throw Error(ErrorCode::invalid_config, "step must be > 0");
  if (restarts < 1) throw Error(ErrorCode::invalid_config, "restarts must be >= 1");
  if (grad_tol < 0.0) throw Error(ErrorCode::invalid_config, "grad_tol must be >= 0");
}

Matrix riemannian_gradient(const Matrix& u, const DensityMatrix& rho,
                           const DensityMatrix& tau) {
  require_same_dim(static_cast<int>(u.rows()), static_cast<int>(u.cols()),
                   "riemannian_gradient");
  require_same_dim(static_cast<int>(u.rows()), rho.dim(), "riemannian_gradient");
  require_same_dim(rho.dim(), tau.dim(), "riemannian_gradient");
  Matrix a = u.adjoint() * rho.mat * u;
  Matrix b = u.adjoint() * tau.mat * u;
  return u * rotated_gradient(a, b) * u.adjoint();
}

Matrix retract(const Matrix& u, const Matrix& direction, double step) {
  require_same_dim(static_cast<int>(u.rows()), static_cast<int>(u.cols()),
                   "retract");
  require_same_dim(static_cast<int>(u.rows()),
                   static_cast<int>(direction.rows()), "retract");
  require_same_dim(static_cast<int>(direction.rows()),
                   static_cast<int>(direction.cols()), "retract");
  if (step == 0.0) return u;
  return polar_factor(u + step * direction * u);
}

OptTrace ascend(const DensityMatrix& rho, const DensityMatrix& tau,
                const Matrix& u0, const OptConfig& cfg) {
  cfg.validate();
  require_same_dim(static_cast<int>(u0.rows()), static_cast<int>(u0.cols()),
                   "ascend");
  require_same_dim(static_cast<int>(u0.rows()), rho.dim(), "ascend");
  require_same_dim(rho.dim(), tau.dim(), "ascend");

  const int n = rho.dim();
  OptTrace trace;
  trace.values.reserve(cfg.t_max + 1);
  Matrix u = u0;
  trace.best_value = -1.0;

  for (long t = 0; t <= cfg.t_max; ++t) {
    Matrix a = u.adjoint() * rho.mat * u;
    Matrix b = u.adjoint() * tau.mat * u;
    double value = a.diagonal().real().dot(b.diagonal().real());
    trace.values.push_back(value);
    if (value > trace.best_value) {
      trace.best_value = value;
      trace.best_iter = t;
      trace.best_unitary = u;
    }
    Matrix grad = rotated_gradient(a, b);
    trace.final_grad_norm = grad.norm();
    if (t == cfg.t_max) break;
    if (cfg.grad_tol > 0.0 && trace.final_grad_norm < cfg.grad_tol) break;
    // U + beta G U = U (I + beta U^dag G U); the polar factor commutes with
    // the left unitary, so the update stays in the rotated frame.
    u = u * polar_factor(Matrix::Identity(n, n) + cfg.step * grad);
  }
  return trace;
}

namespace {

constexpr std::uint64_t kStreamRho = 1;
constexpr std::uint64_t kStreamTau = 2;
constexpr std::uint64_t kStreamStart = 3;

RestartOutcome summarize(const OptTrace& trace, const DensityMatrix& rho,
                         const DensityMatrix& tau, std::int64_t wall_ms) {
  RestartOutcome out;
  out.best_value = trace.best_value;
  out.best_iter = trace.best_iter;
  out.final_grad_norm = trace.final_grad_norm;
  out.stationarity_residual = stationarity_residual(
      ProjectiveMeasurement{trace.best_unitary}, rho, tau);
  out.wall_ms = wall_ms;
  return out;
}

}  // namespace

KEstimate estimate_k(int n, int r, const OptConfig& cfg, Rng& rng) {
  return estimate_k(n, r, cfg, cfg.restarts, cfg.restarts, rng);
}

KEstimate estimate_k(int n, int r, const OptConfig& cfg, int restarts_full,
                     int restarts_sub, Rng& rng) {
  cfg.validate();
  if (r < 2 || n < r) {
    throw Error(ErrorCode::invalid_dimension,
                "estimate_k requires 2 <= r <= n, got r=" + std::to_string(r) +
                    " n=" + std::to_string(n));
  }
  if (restarts_full < 1 || restarts_sub < 1) {
    throw Error(ErrorCode::invalid_config, "restart counts must be >= 1");
  }

  using clock = std::chrono::steady_clock;
  KEstimate est;
  est.n = n;
  est.r = r;
  est.seed = rng.seed();

  Rng rho_rng = rng.derive({kStreamRho});
  Rng tau_rng = rng.derive({kStreamTau});
  DensityMatrix rho = random_density(r, rho_rng);
  DensityMatrix tau = random_density(r, tau_rng);

  Subspace s = Subspace::canonical(n, r);
  DensityMatrix rho_n = n == r ? rho : embed_state(rho, s);
  DensityMatrix tau_n = n == r ? tau : embed_state(tau, s);

  est.numerator = -1.0;
  for (int i = 0; i < restarts_full; ++i) {
    Rng start_rng = rng.derive({kStreamStart, static_cast<std::uint64_t>(i)});
    Matrix w = haar_unitary(r, start_rng).basis;
    Matrix u0 = Matrix::Identity(n, n);
    u0.topLeftCorner(r, r) = w;
    auto t0 = clock::now();
    OptTrace trace = ascend(rho_n, tau_n, u0, cfg);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  clock::now() - t0)
                  .count();
    est.full_runs.push_back(summarize(trace, rho_n, tau_n, ms));
    est.numerator = std::max(est.numerator, trace.best_value);
  }

  est.denominator = -1.0;
  for (int i = 0; i < restarts_sub; ++i) {
    Rng start_rng = rng.derive({kStreamStart, static_cast<std::uint64_t>(i)});
    Matrix v0 = haar_unitary(r, start_rng).basis;
    auto t0 = clock::now();
    OptTrace trace = ascend(rho, tau, v0, cfg);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  clock::now() - t0)
                  .count();
    est.subspace_runs.push_back(summarize(trace, rho, tau, ms));
    est.denominator = std::max(est.denominator, trace.best_value);
  }

  est.ratio = est.numerator / est.denominator;
  return est;
}

}  // namespace pmproc
