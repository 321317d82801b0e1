#pragma once

#include <vector>

#include "core/manifold.hpp"
#include "core/quantum.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

namespace pmproc {

/// Nonnegative combination sum_i lambda_i A_i (x) B_i of PSD tensor factors,
/// kept in factored form and materialized to r^2 x r^2 only at desk scale.
struct SeparableTerm {
  double weight = 0.0;
  Matrix left;
  Matrix right;
};

struct SeparableOperator {
  int r = 0;
  std::vector<SeparableTerm> terms;

  Matrix materialize() const;  // dense r^2 x r^2; requires r <= 8
  static SeparableOperator validated(int r, std::vector<SeparableTerm> terms);
};

struct IneqVerdict {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double tol = 0.0;
  bool pass = false;
};

IneqVerdict make_verdict(double lhs, double rhs, double tol);

/// Trace convexity: tr(A G B G^dag) <= lambda tr(A G1 B G1^dag)
/// + (1-lambda) tr(A G2 B G2^dag) with G the lambda-mix of G1, G2 and
/// A, B PSD.
IneqVerdict lieb_convexity(const Matrix& a, const Matrix& b, const Matrix& g1,
                           const Matrix& g2, double lambda);

/// Tensor quadrature inequality: the two mixed conjugations by X (x) Y and
/// Y (x) X are bounded by the four symmetric conjugations Ad_{X+Y}, Ad_{X-Y}
/// (half weight each), Ad_X and Ad_Y.
IneqVerdict quadrature_inequality(const SeparableOperator& c,
                                  const SeparableOperator& d, const Matrix& x,
                                  const Matrix& y);

/// Monte-Carlo residual of K A K = integral of |K|^{-it} D A D |K|^{-it}
/// against the standard Cauchy density, with D the polar unitary of the
/// Hermitian contraction K. Requires every eigenvalue magnitude > 1e-8.
double cauchy_integral_representation(const Matrix& k, const Matrix& a,
                                      std::int64_t samples, Rng& rng);

/// Checks tr(rho Q_L[tau]) <= ||L||^4 max_Z tr(rho Z[tau]); the max over
/// subspace measurements is approximated from below by restarted ascent, so
/// a pass is sound while a failure may be optimizer shortfall.
IneqVerdict interpolation_bound(const Matrix& lw,
                                const ProjectiveMeasurement& q,
                                const DensityMatrix& rho,
                                const DensityMatrix& tau,
                                const OptConfig& opt);

}  // namespace pmproc
