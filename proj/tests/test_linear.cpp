#include <gtest/gtest.h>

#include <random>

#include "mbsym/linear_system.hpp"
#include "random_poly.hpp"

using namespace mbsym;

namespace {

RationalMatrix M(std::size_t r, std::size_t c, std::initializer_list<long> v) {
  RationalMatrix m(r, c, Rational(0));
  std::size_t k = 0;
  for (long x : v) {
    m(k / c, k % c) = Rational(x);
    ++k;
  }
  return m;
}

bool maps_to_zero(const RationalMatrix& a, const RationalVector& v) {
  for (const auto& x : a.apply(v)) {
    if (!x.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST(Nullspace, SpecExamples) {
  const auto n = solve_nullspace(LinearSystem(M(1, 2, {1, -1})));
  ASSERT_EQ(n.size(), 1u);
  EXPECT_EQ(n[0], (RationalVector{Rational(1), Rational(1)}));
  EXPECT_TRUE(solve_nullspace(LinearSystem(M(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}))).empty());
}

TEST(Solve, InhomogeneousConsistent) {
  const LinearSystem sys(M(2, 3, {1, 1, 0, 0, 1, 1}), {Rational(2), Rational(3)});
  const auto sol = solve_linear(sys);
  EXPECT_EQ(sol.nullspace.size(), 1u);
  const auto ax = sys.matrix.apply(sol.particular);
  EXPECT_EQ(ax, sys.rhs);
}

TEST(Solve, InconsistentThrows) {
  const LinearSystem sys(M(2, 2, {1, 1, 2, 2}), {Rational(1), Rational(3)});
  EXPECT_THROW(solve_linear(sys), InconsistentSystem);
  EXPECT_THROW(LinearSystem(M(2, 2, {1, 0, 0, 1}), {Rational(1)}), DomainError);
}

TEST(RowReduce, RankAndPivots) {
  const auto e = row_reduce(M(3, 3, {1, 2, 3, 2, 4, 6, 0, 1, 1}));
  EXPECT_EQ(e.rank(), 2u);
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(rank(M(2, 2, {0, 0, 0, 0})), 0u);
}

TEST(Span, ExpressAndCanonical) {
  const std::vector<RationalVector> cols{{Rational(1), Rational(0), Rational(1)}, {Rational(0), Rational(1), Rational(1)}};
  const auto c = express_in_span(cols, {Rational(2), Rational(3), Rational(5)});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (RationalVector{Rational(2), Rational(3)}));
  EXPECT_FALSE(express_in_span(cols, {Rational(0), Rational(0), Rational(1)}));
  const auto a = canonical_basis({{Rational(2), Rational(2)}, {Rational(1), Rational(1)}});
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0], (RationalVector{Rational(1), Rational(1)}));
}

class NullspaceProperty : public ::testing::TestWithParam<unsigned> {};

TEST_P(NullspaceProperty, VectorsAreAnnihilatedAndCountMatchesRank) {
  std::mt19937 rng(GetParam());
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  std::uniform_int_distribution<int> sparse(0, 2);
  const std::size_t rows = dim(rng), cols = dim(rng);
  RationalMatrix a(rows, cols, Rational(0));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (sparse(rng) != 0) a(r, c) = fixtures::random_rational(rng);
    }
  }
  const auto n = solve_nullspace(LinearSystem(a));
  EXPECT_EQ(n.size() + rank(a), cols);
  for (const auto& v : n) EXPECT_TRUE(maps_to_zero(a, v));
  EXPECT_EQ(canonical_basis(n).size(), n.size());
}

INSTANTIATE_TEST_SUITE_P(Seeds, NullspaceProperty, ::testing::Range(0u, 50u));
