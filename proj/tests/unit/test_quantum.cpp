#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "core/quantum.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"

using namespace pmproc;

namespace {

DensityMatrix diag_state(const RealVector& d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  for (int i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return DensityMatrix{m};
}

DensityMatrix basis_state(int dim, int which) {
  RealVector d = RealVector::Zero(dim);
  d[which] = 1.0;
  return diag_state(d);
}

}  // namespace

TEST_CASE("random_density satisfies the state invariants") {
  Rng rng(1);
  SUBCASE("dimension one is the scalar 1") {
    DensityMatrix rho = random_density(1, rng);
    CHECK(std::abs(rho.mat(0, 0) - Complex(1.0, 0.0)) <= 1e-12);
  }
  SUBCASE("dim 3: PSD and trace one") {
    for (int i = 0; i < 50; ++i) {
      DensityMatrix rho = random_density(3, rng);
      CHECK(hermitian_residual(rho.mat) <= 1e-10);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.mat, Eigen::EigenvaluesOnly);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
      CHECK(std::abs(rho.mat.trace().real() - 1.0) <= 1e-10);
    }
  }
  SUBCASE("dim 4: spectrum equals the sampled simplex point") {
    Rng seeded(20240);
    Rng clone = seeded;  // replay the internal construction
    DensityMatrix rho = random_density(4, seeded);
    Matrix w = haar_unitary(4, clone).basis;
    RealVector d = random_simplex(4, clone);
    CHECK((rho.mat - w * d.asDiagonal() * w.adjoint()).norm() <= 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.mat, Eigen::EigenvaluesOnly);
    RealVector spectrum = eig.eigenvalues();
    std::sort(d.begin(), d.end());
    CHECK(std::abs(d.sum() - 1.0) <= 1e-12);
    for (int i = 0; i < 4; ++i) CHECK(spectrum[i] == doctest::Approx(d[i]).epsilon(1e-9));
  }
  CHECK_THROWS_AS(random_density(0, rng), Error);
}

TEST_CASE("haar_unitary is unitary and left-invariant in distribution") {
  Rng rng(2);
  SUBCASE("dim 1 gives a unit-modulus scalar") {
    ProjectiveMeasurement pm = haar_unitary(1, rng);
    CHECK(std::abs(std::abs(pm.basis(0, 0)) - 1.0) <= 1e-12);
  }
  SUBCASE("dim 5 unitarity residual") {
    for (int i = 0; i < 20; ++i) {
      CHECK(unitarity_residual(haar_unitary(5, rng).basis) <= 1e-10);
    }
  }
  SUBCASE("E|U_11|^2 = 1/dim at dim 2") {
    RunningStat stat;
    for (int i = 0; i < 10000; ++i) {
      stat.add(std::norm(haar_unitary(2, rng).basis(0, 0)));
    }
    CHECK(std::abs(stat.mean() - 0.5) <= 3.0 * stat.std_error());
  }
  CHECK_THROWS_AS(haar_unitary(0, rng), Error);
}

TEST_CASE("objective handles the canonical anchors") {
  ProjectiveMeasurement canon = ProjectiveMeasurement::canonical(2);
  SUBCASE("state aligned with one outcome") {
    DensityMatrix e1 = basis_state(2, 0);
    CHECK(objective(canon, e1, e1) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("|+><+| against the canonical basis") {
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    DensityMatrix rho{plus};
    CHECK(objective(canon, rho, rho) == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("dimension mismatch raises shape errors") {
    DensityMatrix e1 = basis_state(3, 0);
    CHECK_THROWS_AS(objective(canon, e1, e1), Error);
  }
}

TEST_CASE("objective matches the projector-by-projector expansion") {
  Rng rng(3);
  for (int inst = 0; inst < 20; ++inst) {
    ProjectiveMeasurement pm = haar_unitary(2, rng);
    DensityMatrix rho = random_density(2, rng);
    DensityMatrix tau = random_density(2, rng);
    double expected = 0.0;
    for (int i = 0; i < 2; ++i) {
      Matrix p = pm.basis.col(i) * pm.basis.col(i).adjoint();
      expected += ((p * rho.mat).trace() * (p * tau.mat).trace()).real();
    }
    CHECK(objective(pm, rho, tau) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("objective is symmetric and stays inside [0, 1]") {
  Rng rng(4);
  for (int inst = 0; inst < 300; ++inst) {
    int dim = 2 + static_cast<int>(rng.uniform_below(5));
    ProjectiveMeasurement pm = haar_unitary(dim, rng);
    DensityMatrix rho = random_density(dim, rng);
    DensityMatrix tau = random_density(dim, rng);
    double v = objective(pm, rho, tau);
    CHECK(v == objective(pm, tau, rho));  // products commute term by term
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("outcome probabilities form a distribution") {
  Rng rng(5);
  for (int inst = 0; inst < 200; ++inst) {
    int dim = 2 + static_cast<int>(rng.uniform_below(6));
    OutcomeDistribution dist =
        outcomes(haar_unitary(dim, rng), random_density(dim, rng));
    CHECK(dist.probabilities.minCoeff() >= -1e-12);
    CHECK(std::abs(dist.probabilities.sum() - 1.0) <= 1e-10);
  }
}

TEST_CASE("apply_pm dephases in the measurement basis") {
  Rng rng(6);
  ProjectiveMeasurement canon = ProjectiveMeasurement::canonical(3);
  SUBCASE("diagonal states are fixed points") {
    DensityMatrix rho = diag_state((RealVector(3) << 0.5, 0.3, 0.2).finished());
    CHECK((apply_pm(canon, rho) - rho.mat).norm() <= 1e-14);
  }
  SUBCASE("off-diagonal entries vanish") {
    DensityMatrix rho = random_density(3, rng);
    Matrix out = apply_pm(canon, rho);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) CHECK(std::abs(out(i, j)) <= 1e-14);
      }
    }
  }
  SUBCASE("trace and positivity are preserved") {
    for (int inst = 0; inst < 1000; ++inst) {
      int dim = 2 + static_cast<int>(rng.uniform_below(3));
      Matrix out = apply_pm(haar_unitary(dim, rng), random_density(dim, rng));
      CHECK(std::abs(out.trace().real() - 1.0) <= 1e-10);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(out, Eigen::EigenvaluesOnly);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    }
  }
}

TEST_CASE("weighted objective degenerates and scales correctly") {
  Rng rng(7);
  ProjectiveMeasurement q = haar_unitary(3, rng);
  DensityMatrix rho = random_density(3, rng);
  DensityMatrix tau = random_density(3, rng);
  double plain = objective(q, rho, tau);
  SUBCASE("identity weight reproduces the objective") {
    CHECK(weighted_objective(q, Matrix::Identity(3, 3), rho, tau) ==
          doctest::Approx(plain).epsilon(1e-12));
  }
  SUBCASE("zero weight gives zero") {
    CHECK(weighted_objective(q, Matrix::Zero(3, 3), rho, tau) == 0.0);
  }
  SUBCASE("degree-4 homogeneity, including complex scalars") {
    Matrix lw(3, 3);
    Rng grng(71);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) lw(i, j) = Complex(grng.normal(), grng.normal());
    double base = weighted_objective(q, lw, rho, tau);
    for (Complex c : {Complex(1.7, 0.0), Complex(0.3, -1.2)}) {
      double scaled = weighted_objective(q, (c * lw).eval(), rho, tau);
      double factor = std::pow(std::abs(c), 4.0);
      CHECK(scaled == doctest::Approx(factor * base).epsilon(1e-10));
    }
  }
}

TEST_CASE("biweighted objective matches the tensor-product expansion") {
  Rng rng(8);
  ProjectiveMeasurement q = haar_unitary(2, rng);
  DensityMatrix rho = random_density(2, rng);
  DensityMatrix tau = random_density(2, rng);
  SUBCASE("identity weights collapse to the objective") {
    Matrix id = Matrix::Identity(2, 2);
    CHECK(biweighted_objective(q, id, id, rho, tau) ==
          doctest::Approx(objective(q, rho, tau)).epsilon(1e-12));
    CHECK(biweighted_objective(q, id, Matrix::Zero(2, 2), rho, tau) == 0.0);
  }
  SUBCASE("tensor-product oracle") {
    Matrix lw(2, 2), bw(2, 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        lw(i, j) = Complex(rng.normal(), rng.normal());
        bw(i, j) = Complex(rng.normal(), rng.normal());
      }
    }
    auto kron = [](const Matrix& a, const Matrix& b) {
      Matrix out(4, 4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
      return out;
    };
    double expected = 0.0;
    Matrix rt = kron(rho.mat, tau.mat);
    Matrix lb = kron(lw, bw);
    for (int i = 0; i < 2; ++i) {
      Matrix qi = q.basis.col(i) * q.basis.col(i).adjoint();
      expected += (rt * lb * kron(qi, qi) * lb.adjoint()).trace().real();
    }
    CHECK(biweighted_objective(q, lw, bw, rho, tau) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("stationarity residual vanishes on commuting configurations") {
  ProjectiveMeasurement canon = ProjectiveMeasurement::canonical(3);
  DensityMatrix rho = diag_state((RealVector(3) << 0.6, 0.3, 0.1).finished());
  DensityMatrix tau = diag_state((RealVector(3) << 0.2, 0.3, 0.5).finished());
  CHECK(stationarity_residual(canon, rho, tau) <= 1e-14);

  Rng rng(9);
  ProjectiveMeasurement pm = haar_unitary(4, rng);
  Matrix mixed = Matrix::Identity(4, 4) / 4.0;
  DensityMatrix unif{mixed};
  CHECK(stationarity_residual(pm, unif, unif) <= 1e-13);
}

TEST_CASE("embed_pm preserves the objective") {
  Rng rng(10);
  SUBCASE("r = n returns the measurement unchanged") {
    ProjectiveMeasurement q = haar_unitary(3, rng);
    Subspace s = Subspace::canonical(3, 3);
    ProjectiveMeasurement embedded =
        embed_pm(q, s, ProjectiveMeasurement::canonical(1));
    CHECK((embedded.basis - q.basis).norm() == 0.0);
  }
  SUBCASE("canonical ingredients embed to the canonical measurement") {
    ProjectiveMeasurement embedded =
        embed_pm(ProjectiveMeasurement::canonical(3), Subspace::canonical(5, 3),
                 ProjectiveMeasurement::canonical(2));
    CHECK((embedded.basis - Matrix::Identity(5, 5)).norm() <= 1e-12);
  }
  SUBCASE("objective preserved for random inputs, n=5 r=3") {
    for (int inst = 0; inst < 50; ++inst) {
      ProjectiveMeasurement q = haar_unitary(3, rng);
      ProjectiveMeasurement comp = haar_unitary(2, rng);
      Subspace s = Subspace::canonical(5, 3);
      DensityMatrix rho = random_density(3, rng);
      DensityMatrix tau = random_density(3, rng);
      double inner = objective(q, rho, tau);
      double outer = objective(embed_pm(q, s, comp), embed_state(rho, s),
                               embed_state(tau, s));
      CHECK(std::abs(inner - outer) <= 1e-12 * std::max(1.0, inner));
    }
  }
  SUBCASE("random isometries work too") {
    for (int inst = 0; inst < 20; ++inst) {
      Matrix big = haar_unitary(6, rng).basis;
      Subspace s = Subspace::validated(big.leftCols(3));
      ProjectiveMeasurement q = haar_unitary(3, rng);
      ProjectiveMeasurement comp = haar_unitary(3, rng);
      DensityMatrix rho = random_density(3, rng);
      DensityMatrix tau = random_density(3, rng);
      ProjectiveMeasurement embedded = embed_pm(q, s, comp);
      CHECK(unitarity_residual(embedded.basis) <= 1e-10);
      double inner = objective(q, rho, tau);
      double outer = objective(embedded, embed_state(rho, s), embed_state(tau, s));
      CHECK(std::abs(inner - outer) <= 1e-12 * std::max(1.0, inner));
    }
  }
  SUBCASE("shape mismatch raises") {
    ProjectiveMeasurement q = haar_unitary(3, rng);
    Subspace s = Subspace::canonical(5, 3);
    CHECK_THROWS_AS(embed_pm(q, s, ProjectiveMeasurement::canonical(3)), Error);
  }
}

TEST_CASE("validated constructors reject malformed inputs") {
  Matrix not_herm(2, 2);
  not_herm << Complex(0.5, 0.0), Complex(0.1, 0.2), Complex(0.3, 0.1),
      Complex(0.5, 0.0);
  CHECK_THROWS_AS(DensityMatrix::validated(not_herm), Error);

  Matrix traceless = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix::validated(traceless), Error);

  Matrix not_unitary = Matrix::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(ProjectiveMeasurement::validated(not_unitary), Error);
}
