#include <gtest/gtest.h>

#include "qls/linalg.hpp"
#include "qls/random.hpp"

using namespace qls;

TEST(EigHermitian, IdentityAndDiagonal) {
  auto s = eig_hermitian(HermitianMatrix::identity(2));
  EXPECT_DOUBLE_EQ(s.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues(1), 1.0);

  RealVector v(2);
  v << -1.0, 3.0;
  s = eig_hermitian(HermitianMatrix::diagonal(v));
  EXPECT_NEAR(s.eigenvalues(0), 3.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), -1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.eigenvectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.eigenvectors(0, 1)), 1.0, 1e-15);
}

TEST(EigHermitian, ReconstructsRandomMatrix) {
  Rng rng = make_rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianMatrix a = random_hermitian(4, rng);
    const auto s = eig_hermitian(a);
    const double scale = 1.0 + schatten_norm(a.matrix(), kInf);
    EXPECT_LE(schatten_norm(s.reconstruct() - a.matrix(), kInf), 1e-9 * scale);
    EXPECT_LE(max_abs(s.eigenvectors.adjoint() * s.eigenvectors - ComplexMatrix::Identity(4, 4)), 1e-9);
    for (int i = 0; i + 1 < 4; ++i) EXPECT_GE(s.eigenvalues(i), s.eigenvalues(i + 1));
  }
}

TEST(HermitianMatrix, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m << 1, 2, 0, 1;
  try {
    HermitianMatrix h(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonHermitian);
  }
}

TEST(DensityMatrix, Validation) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{m}, Error);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{m}, Error);
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
}

TEST(MatrixFunction, IdentitySqrtAndRoundTrip) {
  Rng rng = make_rng(2);
  const HermitianMatrix a = random_hermitian(3, rng);
  EXPECT_LE(max_abs(matrix_function(a, [](double x) { return x; }).matrix() - a.matrix()), 1e-12);

  RealVector v(2);
  v << 4.0, 9.0;
  const auto r = matrix_function(HermitianMatrix::diagonal(v), [](double x) { return std::sqrt(x); });
  EXPECT_NEAR(r.matrix()(0, 0).real(), 2.0, 1e-14);
  EXPECT_NEAR(r.matrix()(1, 1).real(), 3.0, 1e-14);

  const HermitianMatrix p(random_positive(4, rng) + 0.1 * ComplexMatrix::Identity(4, 4));
  const auto e = matrix_function(p, [](double x) { return std::exp(x); });
  const auto back = matrix_function(e, [](double x) { return std::log(x); });
  EXPECT_LE(max_abs(back.matrix() - p.matrix()), 1e-9);
}

TEST(MatrixFunction, DomainError) {
  RealVector v(2);
  v << -1.0, 1.0;
  try {
    matrix_function(HermitianMatrix::diagonal(v), [](double x) { return std::log(x); });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
}

TEST(SchattenNorm, Examples) {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  EXPECT_NEAR(schatten_norm(id, 1.0), 3.0, 1e-14);
  EXPECT_NEAR(schatten_norm(id, kInf), 1.0, 1e-14);
  Rng rng = make_rng(3);
  const ComplexMatrix a = ginibre(4, 4, rng);
  EXPECT_NEAR(schatten_norm(a, 2.0), std::sqrt((a.adjoint() * a).trace().real()), 1e-10);
  EXPECT_THROW(schatten_norm(a, 0.5), Error);
}

TEST(SchattenNorm, HermitianSquareSumsEigenvalues) {
  Rng rng = make_rng(4);
  for (int i = 0; i < 10; ++i) {
    const HermitianMatrix a = random_hermitian(5, rng);
    const double n = schatten_norm(a.matrix(), 2.0);
    EXPECT_NEAR(n * n, eig_hermitian(a).eigenvalues.squaredNorm(), 1e-10 * (1 + n * n));
  }
}

TEST(WeightedNorm, Examples) {
  for (double p : {1.0, 2.0, 3.5}) EXPECT_NEAR(weighted_lp_norm(ComplexMatrix::Identity(4, 4), p), 1.0, 1e-14);
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 2.0;
  EXPECT_NEAR(weighted_lp_norm(a, 2.0), std::sqrt(2.0), 1e-14);
  Rng rng = make_rng(5);
  const ComplexMatrix b = ginibre(3, 3, rng);
  for (double p : {1.0, 1.5, 4.0})
    EXPECT_DOUBLE_EQ(weighted_lp_norm(b, p), std::pow(3.0, -1.0 / p) * schatten_norm(b, p));
  EXPECT_THROW(weighted_lp_norm(b, 0.9), Error);
}

TEST(Expm, ZeroDiagonalAndInverse) {
  EXPECT_LE(max_abs(expm(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3)), 1e-15);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.7;
  d(1, 1) = -2.0;
  const ComplexMatrix e = expm(d);
  EXPECT_NEAR(e(0, 0).real(), std::exp(0.7), 1e-14);
  EXPECT_NEAR(e(1, 1).real(), std::exp(-2.0), 1e-14);

  Rng rng = make_rng(6);
  for (int i = 0; i < 10; ++i) {
    ComplexMatrix a = ginibre(4, 4, rng);
    a *= 5.0 * uniform01(rng) / schatten_norm(a, kInf);
    EXPECT_LE(max_abs(expm(a) * expm(-a) - ComplexMatrix::Identity(4, 4)), 1e-8);
    EXPECT_LE(max_abs(expm(0.3 * a) * expm(0.9 * a) - expm(1.2 * a)), 1e-8 * max_abs(expm(1.2 * a)));
  }
}

TEST(Expm, OverflowCap) {
  const ComplexMatrix a = 2e4 * ComplexMatrix::Identity(2, 2);
  try {
    expm(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overflow);
  }
}

TEST(Superop, ColumnStackingConvention) {
  Rng rng = make_rng(7);
  const ComplexMatrix a = ginibre(3, 3, rng), b = ginibre(3, 3, rng), x = ginibre(3, 3, rng);
  EXPECT_LE(max_abs(apply_superop(sandwich_superop(a, b), x) - a * x * b), 1e-12);
  EXPECT_LE(max_abs(unvec(vec(x), 3) - x), 0.0);
  EXPECT_EQ(vec(x)(1), x(1, 0));
}

TEST(Random, HaarIsUnitaryAndDeterministic) {
  Rng r1 = make_rng(42, 3), r2 = make_rng(42, 3);
  const ComplexMatrix u = haar_unitary(5, r1);
  EXPECT_TRUE(is_unitary(u));
  EXPECT_EQ(u, haar_unitary(5, r2));
  Rng r3 = make_rng(9);
  const auto q = dirichlet_uniform(6, r3);
  double total = 0;
  for (double x : q) {
    EXPECT_GE(x, 0.0);
    total += x;
  }
  EXPECT_NEAR(total, 1.0, 1e-14);
}
