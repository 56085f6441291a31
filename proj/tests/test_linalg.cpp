#include <gtest/gtest.h>

#include <random>

#include "iwadec/linalg.hpp"

using namespace iwadec;

TEST(Linalg, RankAndKernelOverQ) {
  std::vector<std::vector<Rational>> rows = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EchelonSpace<Rational> s(3);
  for (auto& r : rows) s.insert(r);
  EXPECT_EQ(s.rank(), 2u);
  auto k = s.kernel();
  ASSERT_EQ(k.size(), 1u);
  for (auto& r : rows) {
    Rational dot(0);
    for (int j = 0; j < 3; ++j) dot += r[j] * k[0][j];
    EXPECT_TRUE(dot.is_zero());
  }
  EXPECT_TRUE(s.contains({3, 2, 5}));
  EXPECT_FALSE(s.contains({0, 0, 1}));
}

TEST(Linalg, CyclotomicRankDropsOnRelation) {
  // 1 + z3 + z3^2 = 0 makes the third row a combination of the first two
  CycNumber z = CycNumber::zeta(3);
  std::vector<std::vector<CycNumber>> rows = {{CycNumber(1), z}, {z, z * z}, {CycNumber(1) + z, CycNumber(-1)}};
  EXPECT_EQ(rank_of(rows, 2), 1u);
}

TEST(Linalg, BareissMatchesSpecializationOnGradedMatrices) {
  // entries c_ij T^(a_i + b_j): diagonal rescaling, so rank over K(T) = rank at T = 1
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> coef(-2, 2), sh(0, 2);
  CycNumber z = CycNumber::zeta(3);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 4;
    std::vector<int> a(n), b(n);
    for (auto& x : a) x = sh(rng);
    for (auto& x : b) x = sh(rng);
    Matrix<CycPoly> m(n, n);
    std::vector<std::vector<CycNumber>> at1(n, std::vector<CycNumber>(n, CycNumber(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        CycNumber c = CycNumber(coef(rng)) + z * CycNumber(coef(rng));
        if (j == 3) c = at1[i][0] + at1[i][1];  // forces rank <= 3 at T = 1
        at1[i][j] = c;
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = CycPoly::monomial(at1[i][j], static_cast<std::size_t>(a[i] + b[j]));
    // at1 column 3 was built from unscaled values, so compare against the matrix itself at T=1
    std::vector<std::vector<CycNumber>> spec(n, std::vector<CycNumber>(n, CycNumber(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) spec[i][j] = m(i, j).eval(CycNumber(1));
    EXPECT_EQ(bareiss_rank(m), rank_of(spec, n));
  }
}

TEST(Linalg, BareissSeesGenericRank) {
  // [[T, 1], [1, T]] has determinant T^2 - 1: rank 2 generically, 1 at T = 1
  Matrix<CycPoly> m(2, 2);
  m(0, 0) = CycPoly::var();
  m(0, 1) = CycPoly(CycNumber(1));
  m(1, 0) = CycPoly(CycNumber(1));
  m(1, 1) = CycPoly::var();
  EXPECT_EQ(bareiss_rank(m), 2u);
}
