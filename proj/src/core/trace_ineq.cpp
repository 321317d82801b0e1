#include "core/trace_ineq.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "core/frames.hpp"

namespace pmproc {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void require_psd(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::shape_error, std::string(name) + " must be square");
  }
  if (hermitian_residual(m) > tol::hermitian) {
    throw Error(ErrorCode::domain_error,
                std::string(name) + " is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -tol::psd * std::max(1.0, m.norm())) {
    throw Error(ErrorCode::domain_error, std::string(name) + " is not PSD");
  }
}

double real_trace_conj(const Matrix& c, const Matrix& w, const Matrix& d) {
  return (c * w * d * w.adjoint()).trace().real();
}

}  // namespace

Matrix SeparableOperator::materialize() const {
  if (r > 8) {
    throw Error(ErrorCode::domain_error,
                "separable operators materialize only up to r = 8");
  }
  Matrix out = Matrix::Zero(r * r, r * r);
  for (const auto& term : terms) {
    out += term.weight * kron(term.left, term.right);
  }
  return out;
}

SeparableOperator SeparableOperator::validated(int r,
                                               std::vector<SeparableTerm> terms) {
  if (r < 1) throw Error(ErrorCode::invalid_dimension, "r must be >= 1");
  for (const auto& term : terms) {
    if (term.weight < 0.0) {
      throw Error(ErrorCode::domain_error,
                  "separable weights must be nonnegative");
    }
    if (term.left.rows() != r || term.right.rows() != r) {
      throw Error(ErrorCode::shape_error, "separable factor has wrong size");
    }
    require_psd(term.left, "separable left factor");
    require_psd(term.right, "separable right factor");
  }
  return SeparableOperator{r, std::move(terms)};
}

IneqVerdict make_verdict(double lhs, double rhs, double tol) {
  IneqVerdict v;
  v.lhs = lhs;
  v.rhs = rhs;
  v.slack = rhs - lhs;
  v.tol = tol;
  v.pass = v.slack >= -tol * std::max(1.0, std::abs(rhs));
  return v;
}

IneqVerdict lieb_convexity(const Matrix& a, const Matrix& b, const Matrix& g1,
                           const Matrix& g2, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw Error(ErrorCode::domain_error, "lambda must lie in [0, 1]");
  }
  if (a.rows() != b.rows() || a.rows() != g1.rows() || g1.rows() != g2.rows()) {
    throw Error(ErrorCode::shape_error, "lieb_convexity dimension mismatch");
  }
  Matrix g = lambda * g1 + (1.0 - lambda) * g2;
  double lhs = real_trace_conj(a, g, b);
  double rhs = lambda * real_trace_conj(a, g1, b) +
               (1.0 - lambda) * real_trace_conj(a, g2, b);
  return make_verdict(lhs, rhs, 1e-10);
}

IneqVerdict quadrature_inequality(const SeparableOperator& c,
                                  const SeparableOperator& d, const Matrix& x,
                                  const Matrix& y) {
  if (c.r != d.r || x.rows() != c.r || y.rows() != c.r || x.rows() != x.cols() ||
      y.rows() != y.cols()) {
    throw Error(ErrorCode::shape_error, "quadrature_inequality dimension mismatch");
  }
  Matrix cm = c.materialize();
  Matrix dm = d.materialize();
  auto ad = [&](const Matrix& j) { return real_trace_conj(cm, kron(j, j), dm); };
  double lhs = real_trace_conj(cm, kron(x, y), dm) +
               real_trace_conj(cm, kron(y, x), dm);
  double rhs = 0.5 * (ad(x + y) + ad(x - y)) + ad(x) + ad(y);
  return make_verdict(lhs, rhs, 1e-9);
}

double cauchy_integral_representation(const Matrix& k, const Matrix& a,
                                      std::int64_t samples, Rng& rng) {
  if (k.rows() != k.cols() || a.rows() != a.cols() || k.rows() != a.rows()) {
    throw Error(ErrorCode::shape_error,
                "cauchy_integral_representation dimension mismatch");
  }
  if (samples < 1) {
    throw Error(ErrorCode::domain_error, "need at least one sample");
  }
  if (hermitian_residual(k) > tol::hermitian) {
    throw Error(ErrorCode::domain_error, "K must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(k);
  const auto& lambda = eig.eigenvalues();
  if (lambda.cwiseAbs().maxCoeff() > 1.0 + 1e-10) {
    throw Error(ErrorCode::domain_error, "K must be a contraction");
  }
  if (lambda.cwiseAbs().minCoeff() < 1e-8) {
    throw Error(ErrorCode::spectral_degeneracy,
                "K has an eigenvalue too close to zero");
  }
  const int n = static_cast<int>(k.rows());
  const Matrix& v = eig.eigenvectors();

  // Work in the eigenbasis of K: there D A D has entries s_j s_k A~_jk, and
  // |K|^{-it} is the diagonal phase e^{-i t x_j} with x_j = log|lambda_j|.
  RealVector x(n), sign(n);
  for (int j = 0; j < n; ++j) {
    x[j] = std::log(std::abs(lambda[j]));
    sign[j] = lambda[j] >= 0.0 ? 1.0 : -1.0;
  }
  Matrix core = v.adjoint() * a * v;
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) core(j, l) *= sign[j] * sign[l];
  }

  Matrix phase_sum = Matrix::Zero(n, n);
  Vector p(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    double t = rng.cauchy();
    for (int j = 0; j < n; ++j) p[j] = std::exp(Complex(0.0, -t * x[j]));
    phase_sum += p * p.transpose();  // e^{-i t (x_j + x_k)}
  }
  Matrix average =
      core.cwiseProduct(phase_sum / static_cast<double>(samples));
  Matrix back = v * average * v.adjoint();
  Matrix target = k * a * k;
  return (back - target).norm() / std::max(1.0, target.norm());
}

IneqVerdict interpolation_bound(const Matrix& lw,
                                const ProjectiveMeasurement& q,
                                const DensityMatrix& rho,
                                const DensityMatrix& tau,
                                const OptConfig& opt) {
  opt.validate();
  const int r = rho.dim();
  if (lw.rows() != r || lw.cols() != r || q.dim() != r || tau.dim() != r) {
    throw Error(ErrorCode::shape_error, "interpolation_bound dimension mismatch");
  }
  double lhs = weighted_objective(q, lw, rho, tau);
  Rng rng(opt.seed);
  double best = -1.0;
  for (int i = 0; i < opt.restarts; ++i) {
    Rng start = rng.derive({0x49, static_cast<std::uint64_t>(i)});
    Matrix u0 = haar_unitary(r, start).basis;
    best = std::max(best, ascend(rho, tau, u0, opt).best_value);
  }
  double norm = operator_norm(lw);
  double rhs = norm * norm * norm * norm * best;
  return make_verdict(lhs, rhs, 1e-8);
}

}  // namespace pmproc
