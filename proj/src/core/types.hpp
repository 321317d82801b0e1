#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pmproc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Error categories surfaced through the C API as status codes.
enum class ErrorCode {
  invalid_dimension,
  shape_error,
  invalid_permutation,
  domain_error,
  spectral_degeneracy,
  degenerate_retraction,
  io_error,
  parse_error,
  unknown_selector,
  invalid_config,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

namespace tol {
// 100x double-precision noise at the dimensions this library targets (<= 64).
inline constexpr double hermitian = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double trace_one = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double frame = 1e-8;
}  // namespace tol

inline double hermitian_residual(const Matrix& m) {
  return (m - m.adjoint()).norm() / std::max(1.0, m.norm());
}

inline double unitarity_residual(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

}  // namespace pmproc
