#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "core/frames.hpp"
#include "core/quantum.hpp"
#include "core/rng.hpp"

using namespace pmproc;

namespace {

std::vector<std::size_t> identity_perm(std::size_t m) {
  std::vector<std::size_t> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  return p;
}

std::vector<std::size_t> shuffled_perm(std::size_t m, Rng& rng) {
  std::vector<std::size_t> p = identity_perm(m);
  for (std::size_t i = m; i > 1; --i) std::swap(p[i - 1], p[rng.uniform_below(i)]);
  return p;
}

std::vector<double> random_phases(std::size_t m, Rng& rng) {
  std::vector<double> phases(m);
  for (auto& phi : phases) phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return phases;
}

ParsevalFrame haar_frame(int n, int r, Rng& rng) {
  return project_frame(haar_unitary(n, rng), Subspace::canonical(n, r));
}

}  // namespace

TEST_CASE("project_frame on canonical inputs") {
  ParsevalFrame frame = project_frame(ProjectiveMeasurement::canonical(5),
                                      Subspace::canonical(5, 2));
  REQUIRE(frame.m() == 6);  // ceil(5/2) * 2, one zero pad
  CHECK(frame.vectors[0][0] == Complex(1, 0));
  CHECK(frame.vectors[1][1] == Complex(1, 0));
  for (int i = 2; i < 6; ++i) CHECK(frame.vectors[i].norm() <= 1e-15);
}

TEST_CASE("projected Haar frames are Parseval") {
  Rng rng(40);
  for (int inst = 0; inst < 30; ++inst) {
    int r = 2 + static_cast<int>(rng.uniform_below(4));
    int n = r + static_cast<int>(rng.uniform_below(12));
    ParsevalFrame frame = haar_frame(n, r, rng);
    CHECK(frame.identity_residual() <= 1e-8);
    CHECK(std::abs(frame.total_weight() - r) <= 1e-8);
    for (const auto& v : frame.vectors) CHECK(v.norm() <= 1.0 + 1e-10);
    CHECK(frame.m() == ((n + r - 1) / r) * r);
    // zero pads beyond the measurement size
    for (int i = n; i < frame.m(); ++i) CHECK(frame.vectors[i].norm() == 0.0);
  }
}

TEST_CASE("build_weights on the canonical frame gives L1 = I") {
  ParsevalFrame frame = project_frame(ProjectiveMeasurement::canonical(4),
                                      Subspace::canonical(4, 2));
  WeightList wl = build_weights(frame, identity_perm(4), std::vector<double>(4, 0.0));
  REQUIRE(wl.tiles() == 2);
  CHECK((wl.weights[0] - Matrix::Identity(2, 2)).norm() <= 1e-15);
  CHECK(wl.weights[1].norm() <= 1e-15);
}

TEST_CASE("partition of unity holds for every permutation and phase") {
  Rng rng(41);
  for (int inst = 0; inst < 200; ++inst) {
    int r = 2 + static_cast<int>(rng.uniform_below(4));
    int n = r + static_cast<int>(rng.uniform_below(15));
    ParsevalFrame frame = haar_frame(n, r, rng);
    std::size_t m = frame.m();
    WeightList wl = build_weights(frame, shuffled_perm(m, rng), random_phases(m, rng));
    CHECK(partition_identity_residual(wl) <= 1e-8);
    CHECK(std::abs(variance_matrix(wl).trace().real() - r) <= 1e-8);
  }
}

TEST_CASE("build_weights validates permutation and phases") {
  Rng rng(42);
  ParsevalFrame frame = haar_frame(4, 2, rng);
  std::vector<double> phases(4, 0.0);
  SUBCASE("wrong length") {
    CHECK_THROWS_AS(build_weights(frame, identity_perm(3), phases), Error);
  }
  SUBCASE("duplicate label") {
    std::vector<std::size_t> dup{0, 1, 1, 3};
    CHECK_THROWS_AS(build_weights(frame, dup, phases), Error);
  }
  SUBCASE("phase vector length") {
    CHECK_THROWS_AS(build_weights(frame, identity_perm(4), std::vector<double>(3, 0.0)),
                    Error);
  }
}

TEST_CASE("a global phase cancels in the Gram products") {
  Rng rng(43);
  ParsevalFrame frame = haar_frame(6, 2, rng);
  auto perm = identity_perm(6);
  WeightList zero = build_weights(frame, perm, std::vector<double>(6, 0.0));
  WeightList shifted = build_weights(frame, perm, std::vector<double>(6, 1.234));
  for (int t = 0; t < zero.tiles(); ++t) {
    Matrix a = zero.weights[t].adjoint() * zero.weights[t];
    Matrix b = shifted.weights[t].adjoint() * shifted.weights[t];
    CHECK((a - b).norm() <= 1e-12);
  }
}

TEST_CASE("decomposition residual vanishes") {
  Rng rng(44);
  SUBCASE("canonical everything") {
    ProjectiveMeasurement pm = ProjectiveMeasurement::canonical(4);
    Subspace s = Subspace::canonical(4, 2);
    ParsevalFrame frame = project_frame(pm, s);
    WeightList wl = build_weights(frame, identity_perm(4), std::vector<double>(4, 0.0));
    DensityMatrix rho = embed_state(random_density(2, rng), s);
    DensityMatrix tau = embed_state(random_density(2, rng), s);
    CHECK(decomposition_residual(pm, s, wl, rho, tau) <= 1e-12);
  }
  SUBCASE("random measurement, n=6 r=2, any partition") {
    ProjectiveMeasurement pm = haar_unitary(6, rng);
    Subspace s = Subspace::canonical(6, 2);
    ParsevalFrame frame = project_frame(pm, s);
    DensityMatrix rho = embed_state(random_density(2, rng), s);
    DensityMatrix tau = embed_state(random_density(2, rng), s);
    for (int rep = 0; rep < 20; ++rep) {
      WeightList wl = build_weights(frame, shuffled_perm(6, rng), random_phases(6, rng));
      CHECK(decomposition_residual(pm, s, wl, rho, tau) <= 1e-8);
    }
  }
}

TEST_CASE("variance matrix basics") {
  Rng rng(45);
  ParsevalFrame canon = project_frame(ProjectiveMeasurement::canonical(4),
                                      Subspace::canonical(4, 2));
  WeightList wl = build_weights(canon, identity_perm(4), std::vector<double>(4, 0.0));
  CHECK((variance_matrix(wl) - Matrix::Identity(2, 2)).norm() <= 1e-14);

  ParsevalFrame frame = haar_frame(9, 3, rng);
  WeightList random_wl =
      build_weights(frame, shuffled_perm(frame.m(), rng), random_phases(frame.m(), rng));
  Matrix var = variance_matrix(random_wl);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(var, Eigen::EigenvaluesOnly);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
  CHECK(std::abs(var.trace().real() - 3.0) <= 1e-8);
}

TEST_CASE("operator_norm agrees with an independent power iteration") {
  CHECK(operator_norm(Matrix::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-12));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  CHECK(operator_norm(d) == doctest::Approx(3.0).epsilon(1e-12));

  Rng rng(46);
  Matrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  Vector v = Vector::Ones(4).normalized();
  double sigma = 0.0;
  for (int it = 0; it < 4000; ++it) {
    Vector w = m.adjoint() * (m * v);
    sigma = w.norm();
    v = w / sigma;
  }
  CHECK(operator_norm(m) == doctest::Approx(std::sqrt(sigma)).epsilon(1e-8));

  // beyond the dense-SVD cutoff the power-iteration path takes over
  Matrix big(70, 70);
  for (int i = 0; i < 70; ++i)
    for (int j = 0; j < 70; ++j) big(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::JacobiSVD<Matrix> svd(big);
  CHECK(operator_norm(big) ==
        doctest::Approx(svd.singularValues()(0)).epsilon(1e-6));
}

TEST_CASE("partition search never regresses") {
  Rng rng(47);
  SUBCASE("canonical frame: identity candidate is optimal") {
    ParsevalFrame frame = project_frame(ProjectiveMeasurement::canonical(4),
                                        Subspace::canonical(4, 2));
    PartitionSearchResult res = search_partition(frame, 50, rng);
    CHECK(res.initial_opnorm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(res.best_opnorm == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("budget one returns the initial candidate") {
    ParsevalFrame frame = haar_frame(8, 2, rng);
    PartitionSearchResult res = search_partition(frame, 1, rng);
    CHECK(res.best_opnorm == res.initial_opnorm);
    CHECK(res.samples_tried == 1);
    CHECK(res.best_perm == identity_perm(8));
  }
  SUBCASE("monotone in the budget for nested streams") {
    ParsevalFrame frame = haar_frame(16, 4, rng);
    Rng a = rng.derive({1});
    Rng b = rng.derive({1});
    PartitionSearchResult small = search_partition(frame, 50, a);
    PartitionSearchResult large = search_partition(frame, 200, b);
    CHECK(large.best_opnorm <= small.best_opnorm);
    CHECK(small.best_opnorm <= small.initial_opnorm);
  }
}

TEST_CASE("moment estimator") {
  Rng rng(48);
  SUBCASE("k = 1 is deterministic with zero spread") {
    for (int inst = 0; inst < 5; ++inst) {
      int r = 2 + static_cast<int>(rng.uniform_below(3));
      ParsevalFrame frame = haar_frame(4 * r, r, rng);
      MomentEstimate est = estimate_fk(frame, 1, 9, rng);
      CHECK(est.std_error == 0.0);
      CHECK(std::abs(est.mean - r) <= 1e-8);
      MomentEstimate again = estimate_fk(frame, 1, 9, rng);
      CHECK(est.mean == again.mean);
    }
  }
  SUBCASE("canonical r=2 T=2 frame matches the exhaustive average") {
    ParsevalFrame frame = project_frame(ProjectiveMeasurement::canonical(2),
                                        Subspace::canonical(2, 2));
    // pad to two tiles so the partition has somewhere to move mass
    std::vector<Vector> padded = frame.vectors;
    padded.push_back(Vector::Zero(2));
    padded.push_back(Vector::Zero(2));
    ParsevalFrame four = ParsevalFrame::validated(2, padded);

    // The frame is orthonormal-or-zero, so the variance matrix is diagonal
    // with multinomial counts; exhaust all 24 permutations exactly.
    std::vector<std::size_t> perm = identity_perm(4);
    std::vector<double> zero_phases(4, 0.0);
    double oracle = 0.0;
    int count = 0;
    std::sort(perm.begin(), perm.end());
    do {
      oracle += partition_variance(four, perm, zero_phases).squaredNorm();
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(count == 24);
    oracle /= count;
    CHECK(oracle == doctest::Approx(8.0 / 3.0).epsilon(1e-12));

    MomentEstimate est = estimate_fk(four, 2, 20000, rng);
    CHECK(std::abs(est.mean - oracle) <= 3.0 * est.std_error);
  }
  SUBCASE("standard error shrinks like the square root of the sample count") {
    ParsevalFrame frame = haar_frame(8, 2, rng);
    Rng a = rng.derive({2});
    Rng b = rng.derive({3});
    MomentEstimate coarse = estimate_fk(frame, 2, 100, a);
    MomentEstimate fine = estimate_fk(frame, 2, 10000, b);
    double ratio = coarse.std_error / fine.std_error;
    CHECK(ratio >= 5.0);
    CHECK(ratio <= 20.0);
  }
  SUBCASE("argument validation") {
    ParsevalFrame frame = haar_frame(4, 2, rng);
    CHECK_THROWS_AS(estimate_fk(frame, 0, 10, rng), Error);
    CHECK_THROWS_AS(estimate_fk(frame, 2, 0, rng), Error);
  }
}

TEST_CASE("moment bound reference arithmetic") {
  CHECK(moment_bound_reference(2, 1, 2) == doctest::Approx(3.0));
  CHECK(moment_bound_reference(2, 2, 4) == doctest::Approx(40.0));
  // k = 1, T large: tends to r
  CHECK(std::abs(moment_bound_reference(2, 1, 1000000) - 2.0) <= 1e-4);
  CHECK_THROWS_AS(moment_bound_reference(1, 1, 2), Error);
  CHECK_THROWS_AS(moment_bound_reference(2, 0, 2), Error);
  CHECK_THROWS_AS(moment_bound_reference(2, 3, 2), Error);
  CHECK_THROWS_AS(moment_bound_reference(2, 1, 1), Error);
}
