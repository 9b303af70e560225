#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "dlmq/gates.hpp"
#include "dlmq/linalg.hpp"
#include "test_support.hpp"

namespace {

using namespace dlmq;

using reference::random_unitary;

void expect_matrix_near(const RealMatrix& a, const RealMatrix& b, double tol) {
  ASSERT_EQ(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      EXPECT_NEAR(a(i, j), b(i, j), tol) << "entry (" << i << "," << j << ")";
}

TEST(Realify, HadamardBlocks) {
  const double h = 1.0 / std::numbers::sqrt2;
  const RealMatrix expected(4, {h, 0, h, 0,
                                0, h, 0, h,
                                h, 0, -h, 0,
                                0, h, 0, -h});
  expect_matrix_near(realify(unitary::hadamard()), expected, 1e-15);
}

TEST(Realify, IdentityStaysIdentity) {
  EXPECT_EQ(realify(ComplexMatrix::identity(2)), RealMatrix::identity(4));
}

TEST(Realify, XRotationBlocks) {
  const double h = 1.0 / std::numbers::sqrt2;
  const RealMatrix expected(4, {h, 0, 0, -h,
                                0, h, h, 0,
                                0, -h, h, 0,
                                h, 0, 0, h});
  expect_matrix_near(realify(unitary::x_rotation()), expected, 1e-15);
}

TEST(Realify, RejectsNonUnitary) {
  EXPECT_THROW(realify(ComplexMatrix(2, {1.0, 1.0, 0.0, 1.0})), PreconditionError);
}

TEST(Realify, RejectsOversizedMatrix) {
  EXPECT_THROW(realify(ComplexMatrix::identity(512)), DimensionError);
}

TEST(RealifyProperty, HomomorphismOnRandomPairs) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = std::size_t{1} << (1 + trial % 3);
    const ComplexMatrix u = random_unitary(n, gen);
    const ComplexMatrix v = random_unitary(n, gen);
    expect_matrix_near(realify(u * v), realify(u) * realify(v), 1e-10);
  }
}

TEST(RealifyProperty, ActsLikeTheComplexMatrixOnVectors) {
  std::mt19937_64 gen(12);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = std::size_t{1} << (1 + trial % 3);
    const ComplexMatrix u = random_unitary(n, gen);
    ComplexVector a(n);
    double s = 0.0;
    for (auto& z : a) {
      z = {g(gen), g(gen)};
      s += std::norm(z);
    }
    for (auto& z : a) z /= std::sqrt(s);

    const RealVector lhs = realify(u) * realify(std::span<const Complex>(a));
    const RealVector rhs = realify(std::span<const Complex>(u * a));
    ASSERT_EQ(lhs.size(), rhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_NEAR(lhs[i], rhs[i], 1e-10);
  }
}

TEST(RealifyProperty, ResultIsOrthogonal) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix u = random_unitary(std::size_t{1} << (1 + trial % 4), gen);
    EXPECT_LE(orthogonality_defect(realify(u)), 1e-10);
  }
}

TEST(Complexify, InvertsVectorRealification) {
  const ComplexVector a{{0.6, 0.0}, {0.0, 0.8}};
  const RealVector r = realify(std::span<const Complex>(a));
  EXPECT_EQ(r, (RealVector{0.6, 0.0, 0.0, 0.8}));
  EXPECT_EQ(complexify(r), a);
  EXPECT_THROW(complexify(RealVector{1.0, 2.0, 3.0}), DimensionError);
}

TEST(Normalize, PythagoreanTriple) {
  const RealUnitVector u = normalize({3.0, 4.0});
  EXPECT_DOUBLE_EQ(u[0], 0.6);
  EXPECT_DOUBLE_EQ(u[1], 0.8);
}

TEST(Normalize, UnitVectorUnchanged) {
  EXPECT_EQ(normalize({1.0, 0.0, 0.0, 0.0}).vector(), (RealVector{1, 0, 0, 0}));
}

TEST(Normalize, UniformVector) {
  EXPECT_EQ(normalize({1.0, 1.0, 1.0, 1.0}).vector(),
            (RealVector{0.5, 0.5, 0.5, 0.5}));
}

TEST(Normalize, RejectsZeroAndTinyVectors) {
  EXPECT_THROW(normalize({0.0, 0.0}), DegenerateInputError);
  EXPECT_THROW(normalize({1e-13, 0.0}), DegenerateInputError);
}

TEST(RealUnitVector, CheckedRejectsNonUnit) {
  EXPECT_NO_THROW(RealUnitVector::checked({0.6, 0.8}));
  EXPECT_THROW(RealUnitVector::checked({0.6, 0.9}), PreconditionError);
  EXPECT_THROW(RealUnitVector::checked({}), PreconditionError);
}

TEST(SparseRows, MatchesDenseProduct) {
  std::mt19937_64 gen(14);
  const RealMatrix m = realify(random_unitary(4, gen));
  const SparseRows s(m);
  const RealVector v{0.1, -0.2, 0.3, 0.4, -0.5, 0.6, 0.7, -0.8};
  RealVector out(8);
  s.apply(v, out);
  const RealVector dense = m * v;
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(out[i], dense[i], 1e-15);
  RealVector wrong(4);
  EXPECT_THROW(s.apply(v, wrong), DimensionError);
}

}  // namespace
