#include "core/quantum.hpp"

#include <cmath>
#include <numbers>

namespace pmproc {

namespace {

void require_square(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::shape_error,
                std::string(name) + " must be square, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_dim_match(int a, int b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::shape_error,
                std::string("dimension mismatch in ") + what + ": " +
                    std::to_string(a) + " vs " + std::to_string(b));
  }
}

void require_positive_dim(int dim) {
  if (dim < 1) {
    throw Error(ErrorCode::invalid_dimension,
                "dimension must be >= 1, got " + std::to_string(dim));
  }
}

}  // namespace

DensityMatrix DensityMatrix::validated(Matrix m) {
  require_square(m, "density matrix");
  if (!m.allFinite()) {
    throw Error(ErrorCode::domain_error, "density matrix has non-finite entries");
  }
  if (hermitian_residual(m) > tol::hermitian) {
    throw Error(ErrorCode::domain_error, "density matrix is not Hermitian");
  }
  if (std::abs(m.trace().real() - 1.0) > tol::trace_one ||
      std::abs(m.trace().imag()) > tol::trace_one) {
    throw Error(ErrorCode::domain_error, "density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -tol::psd) {
    throw Error(ErrorCode::domain_error, "density matrix is not PSD");
  }
  return DensityMatrix{std::move(m)};
}

ProjectiveMeasurement ProjectiveMeasurement::canonical(int dim) {
  require_positive_dim(dim);
  return ProjectiveMeasurement{Matrix::Identity(dim, dim)};
}

ProjectiveMeasurement ProjectiveMeasurement::validated(Matrix u) {
  require_square(u, "measurement basis");
  if (unitarity_residual(u) > tol::unitary) {
    throw Error(ErrorCode::domain_error, "measurement basis is not unitary");
  }
  return ProjectiveMeasurement{std::move(u)};
}

Subspace Subspace::canonical(int n, int r) {
  require_positive_dim(n);
  require_positive_dim(r);
  if (r > n) {
    throw Error(ErrorCode::invalid_dimension,
                "subspace dimension exceeds ambient dimension");
  }
  return Subspace{Matrix::Identity(n, r)};
}

Subspace Subspace::validated(Matrix v) {
  if (v.rows() < v.cols()) {
    throw Error(ErrorCode::shape_error, "isometry must be tall (n >= r)");
  }
  if (unitarity_residual(v) > tol::unitary) {
    throw Error(ErrorCode::domain_error,
                "isometry columns are not orthonormal");
  }
  return Subspace{std::move(v)};
}

RealVector random_simplex(int dim, Rng& rng) {
  require_positive_dim(dim);
  RealVector d(dim);
  double total = 0.0;
  for (int i = 0; i < dim; ++i) {
    d[i] = -std::log(1.0 - rng.uniform());
    total += d[i];
  }
  return d / total;
}

DensityMatrix random_density(int dim, Rng& rng) {
  require_positive_dim(dim);
  Matrix w = haar_unitary(dim, rng).basis;
  RealVector d = random_simplex(dim, rng);
  Matrix rho = w * d.asDiagonal() * w.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());  // scrub rounding asymmetry
  return DensityMatrix{std::move(rho)};
}

ProjectiveMeasurement haar_unitary(int dim, Rng& rng) {
  require_positive_dim(dim);
  Matrix g(dim, dim);
  const double scale = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(rng.normal(), rng.normal()) * scale;
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix rdiag = qr.matrixQR().diagonal();
  for (int j = 0; j < dim; ++j) {
    Complex r = rdiag(j);
    Complex phase = std::abs(r) > 0.0 ? r / std::abs(r) : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return ProjectiveMeasurement{std::move(q)};
}

OutcomeDistribution outcomes(const ProjectiveMeasurement& pm,
                             const DensityMatrix& rho) {
  require_dim_match(pm.dim(), rho.dim(), "outcomes");
  const int n = pm.dim();
  RealVector p(n);
  for (int i = 0; i < n; ++i) {
    p[i] = (pm.basis.col(i).adjoint() * rho.mat * pm.basis.col(i))(0).real();
  }
  return OutcomeDistribution{std::move(p), pm};
}

double objective(const ProjectiveMeasurement& pm, const DensityMatrix& rho,
                 const DensityMatrix& tau) {
  require_dim_match(pm.dim(), rho.dim(), "objective");
  require_dim_match(pm.dim(), tau.dim(), "objective");
  const int n = pm.dim();
  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto u = pm.basis.col(i);
    double p = (u.adjoint() * rho.mat * u)(0).real();
    double q = (u.adjoint() * tau.mat * u)(0).real();
    value += p * q;
  }
  return value;
}

Matrix apply_pm(const ProjectiveMeasurement& pm, const DensityMatrix& rho) {
  require_dim_match(pm.dim(), rho.dim(), "apply_pm");
  Matrix rotated = pm.basis.adjoint() * rho.mat * pm.basis;
  Matrix out = pm.basis * rotated.diagonal().asDiagonal() * pm.basis.adjoint();
  return 0.5 * (out + out.adjoint().eval());
}

double weighted_objective(const ProjectiveMeasurement& q, const Matrix& weight,
                          const DensityMatrix& rho, const DensityMatrix& tau) {
  require_square(weight, "weight");
  require_dim_match(q.dim(), static_cast<int>(weight.rows()), "weighted_objective");
  require_dim_match(q.dim(), rho.dim(), "weighted_objective");
  require_dim_match(q.dim(), tau.dim(), "weighted_objective");
  // L Q_i L^dag = w_i w_i^dag with w_i = L q_i, so each term factors into
  // (w_i^dag rho w_i)(w_i^dag tau w_i).
  Matrix w = weight * q.basis;
  double value = 0.0;
  for (int i = 0; i < q.dim(); ++i) {
    const auto wi = w.col(i);
    double a = (wi.adjoint() * rho.mat * wi)(0).real();
    double b = (wi.adjoint() * tau.mat * wi)(0).real();
    value += a * b;
  }
  return value;
}

double biweighted_objective(const ProjectiveMeasurement& q, const Matrix& lw,
                            const Matrix& bw, const DensityMatrix& rho,
                            const DensityMatrix& tau) {
  require_square(lw, "weight");
  require_square(bw, "weight");
  require_dim_match(q.dim(), static_cast<int>(lw.rows()), "biweighted_objective");
  require_dim_match(q.dim(), static_cast<int>(bw.rows()), "biweighted_objective");
  require_dim_match(q.dim(), rho.dim(), "biweighted_objective");
  require_dim_match(q.dim(), tau.dim(), "biweighted_objective");
  Matrix wl = lw * q.basis;
  Matrix wb = bw * q.basis;
  double value = 0.0;
  for (int i = 0; i < q.dim(); ++i) {
    double a = (wl.col(i).adjoint() * rho.mat * wl.col(i))(0).real();
    double b = (wb.col(i).adjoint() * tau.mat * wb.col(i))(0).real();
    value += a * b;
  }
  return value;
}

double stationarity_residual(const ProjectiveMeasurement& pm,
                             const DensityMatrix& rho,
                             const DensityMatrix& tau) {
  Matrix ptau = apply_pm(pm, tau);
  Matrix prho = apply_pm(pm, rho);
  Matrix lhs = rho.mat * ptau - ptau * rho.mat;
  Matrix rhs = prho * tau.mat - tau.mat * prho;
  return (lhs - rhs).norm();
}

Matrix complement_basis(const Matrix& isometry) {
  const int n = static_cast<int>(isometry.rows());
  const int r = static_cast<int>(isometry.cols());
  if (r == n) return Matrix(n, 0);
  Eigen::HouseholderQR<Matrix> qr(isometry);
  Matrix q = qr.householderQ();
  Matrix comp = q.rightCols(n - r);
  // Pin each column's largest entry to the positive real axis; Householder
  // phases are otherwise arbitrary and canonical inputs should give
  // canonical outputs.
  for (int j = 0; j < comp.cols(); ++j) {
    int imax = 0;
    comp.col(j).cwiseAbs().maxCoeff(&imax);
    Complex z = comp(imax, j);
    if (std::abs(z) > 0.0) comp.col(j) *= std::conj(z) / std::abs(z);
  }
  return comp;
}

ProjectiveMeasurement embed_pm(const ProjectiveMeasurement& q,
                               const Subspace& s,
                               const ProjectiveMeasurement& complement) {
  const int n = s.ambient_dim();
  const int r = s.sub_dim();
  require_dim_match(q.dim(), r, "embed_pm");
  if (r == n) return q;
  require_dim_match(complement.dim(), n - r, "embed_pm complement");
  Matrix basis(n, n);
  basis.leftCols(r) = s.isometry * q.basis;
  basis.rightCols(n - r) = complement_basis(s.isometry) * complement.basis;
  return ProjectiveMeasurement{std::move(basis)};
}

DensityMatrix embed_state(const DensityMatrix& rho, const Subspace& s) {
  require_dim_match(rho.dim(), s.sub_dim(), "embed_state");
  return DensityMatrix{s.isometry * rho.mat * s.isometry.adjoint()};
}

DensityMatrix restrict_state(const DensityMatrix& rho, const Subspace& s) {
  require_dim_match(rho.dim(), s.ambient_dim(), "restrict_state");
  return DensityMatrix{s.isometry.adjoint() * rho.mat * s.isometry};
}

}  // namespace pmproc
