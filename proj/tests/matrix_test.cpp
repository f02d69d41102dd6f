#include <gtest/gtest.h>

#include "qrep/matrix.hpp"

using namespace qrep;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F5 = FieldSpec::prime(5);

// Number of x in F_p^n with m x = 0, by enumeration.
std::uint64_t brute_kernel_size(const Matrix& m) {
  std::uint32_t p = m.field().p;
  std::vector<std::uint32_t> x(m.cols(), 0);
  std::uint64_t count = 0;
  for (;;) {
    bool zero = true;
    for (std::size_t i = 0; i < m.rows() && zero; ++i) {
      Scalar s = Scalar::zero(m.field());
      for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * Scalar::from_int(m.field(), x[j]);
      zero = s.is_zero();
    }
    if (zero) ++count;
    std::size_t pos = 0;
    while (pos < x.size() && ++x[pos] == p) x[pos++] = 0;
    if (pos == x.size()) break;
  }
  return count;
}

}  // namespace

TEST(Rref, IdentityAndZero) {
  auto r = rref(Matrix::identity(Q, 2));
  EXPECT_EQ(r.reduced, Matrix::identity(Q, 2));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
  auto z = rref(Matrix(Q, 3, 4));
  EXPECT_EQ(z.rank, 0u);
  EXPECT_TRUE(z.pivots.empty());
  EXPECT_EQ(z.reduced, Matrix(Q, 3, 4));
}

TEST(Rref, DependentRowsOverF5) {
  auto r = rref(Matrix::from_rows(F5, {{2, 4}, {1, 2}}));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.reduced, Matrix::from_rows(F5, {{1, 2}, {0, 0}}));
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(Matrix::identity(Q, 3)).cols(), 0u);
  Matrix k = kernel_basis(Matrix(Q, 2, 3));
  EXPECT_EQ(k, Matrix::identity(Q, 3));
  EXPECT_EQ(kernel_basis(Matrix::from_rows(Q, {{1, 2}})), Matrix::from_rows(Q, {{-2}, {1}}));
}

TEST(Solve, Examples) {
  Matrix b = Matrix::from_rows(Q, {{4}, {-1}});
  EXPECT_EQ(*solve(Matrix::identity(Q, 2), b), b);
  EXPECT_FALSE(solve(Matrix::from_rows(Q, {{1}, {0}}), Matrix::from_rows(Q, {{0}, {1}})));
  EXPECT_EQ(*solve(Matrix::from_rows(Q, {{1, 1}}), Matrix::from_rows(Q, {{3}})), Matrix::from_rows(Q, {{3}, {0}}));
}

TEST(Solve, ShapeMismatchThrows) {
  EXPECT_THROW(solve(Matrix(Q, 2, 2), Matrix(Q, 3, 1)), MismatchError);
  EXPECT_THROW(Matrix(Q, 2, 3) * Matrix(Q, 2, 3), MismatchError);
}

TEST(Inverse, RoundTrip) {
  Rng rng(4);
  for (auto f : {Q, F5}) {
    Matrix m = random_invertible(4, f, rng);
    auto inv = inverse(m);
    ASSERT_TRUE(inv);
    EXPECT_EQ(m * *inv, Matrix::identity(f, 4));
  }
  EXPECT_FALSE(inverse(Matrix::from_rows(Q, {{1, 2}, {2, 4}})));
}

TEST(MatrixProperty, RankNullity) {
  Rng rng(11);
  for (auto f : {Q, F2, F5}) {
    for (int t = 0; t < 60; ++t) {
      std::size_t r = rng() % 6, c = rng() % 6;
      Matrix m = random_matrix(r, c, f, rng);
      if (t % 3 == 0 && r > 1) m.set_block(r - 1, 0, m.block(0, 0, 1, c));
      EXPECT_EQ(rank(m) + kernel_basis(m).cols(), c);
      Matrix k = kernel_basis(m);
      EXPECT_TRUE((m * k).is_zero());
      EXPECT_EQ(rank(k), k.cols());
    }
  }
}

TEST(MatrixProperty, RrefIdempotent) {
  Rng rng(12);
  for (auto f : {Q, F2, F5})
    for (int t = 0; t < 40; ++t) {
      Matrix m = random_matrix(1 + rng() % 5, 1 + rng() % 5, f, rng);
      Matrix once = rref(m).reduced;
      EXPECT_EQ(rref(once).reduced, once);
    }
}

TEST(MatrixProperty, SolveSatisfiesSystem) {
  Rng rng(13);
  for (auto f : {Q, F5})
    for (int t = 0; t < 60; ++t) {
      Matrix a = random_matrix(1 + rng() % 4, 1 + rng() % 4, f, rng);
      Matrix b = (t % 2) ? a * random_matrix(a.cols(), 1, f, rng) : random_matrix(a.rows(), 1, f, rng);
      auto x = solve(a, b);
      if (t % 2) ASSERT_TRUE(x);
      if (x) EXPECT_EQ(a * *x, b);
      else EXPECT_GT(rank(hstack(f, a.rows(), {a, b})), rank(a));
    }
}

TEST(MatrixOracle, RankMatchesKernelCountOverF2) {
  Rng rng(14);
  for (int t = 0; t < 40; ++t) {
    Matrix m = random_matrix(1 + rng() % 5, 1 + rng() % 7, F2, rng);
    std::uint64_t expected = std::uint64_t{1} << (m.cols() - rank(m));
    EXPECT_EQ(brute_kernel_size(m), expected);
  }
}

TEST(SplitSpace, CoordinatesInvertBasis) {
  Rng rng(15);
  Matrix b = random_matrix(5, 2, F5, rng);
  while (rank(b) < 2) b = random_matrix(5, 2, F5, rng);
  SplitSpace s = split_space(b);
  EXPECT_EQ(s.codim(), 3u);
  EXPECT_EQ(s.sub_coords() * b, Matrix::identity(F5, 2));
  EXPECT_TRUE((s.quotient_map() * b).is_zero());
  EXPECT_THROW(split_space(Matrix::from_rows(F5, {{1, 2}, {1, 2}})), MismatchError);
}

TEST(RandomMatrix, Deterministic) {
  for (auto f : {Q, F5}) {
    Rng a(77), b(77);
    EXPECT_EQ(random_matrix(3, 4, f, a), random_matrix(3, 4, f, b));
  }
}
