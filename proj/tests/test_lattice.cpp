#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "chowfiber/determinantal.hpp"
#include "chowfiber/lattice.hpp"
#include "support/generators.hpp"

using namespace chowfiber;

namespace {

// Oracle: group of Z^rows / colspan(a) from determinantal divisors alone.
FGAbelianGroup oracle_cokernel(const IntMatrix& a) {
  return FGAbelianGroup::from_smith_diagonal(invariant_factors_from_divisors(determinantal_divisors(a)),
                                             a.rows());
}

// The 7x10 degree matrix of fixtures/example31.json.
IntMatrix example31_matrix() {
  return IntMatrix::of({{-2, -1, -1, -2, 1, 1, 0, 0, 0, 0},
                        {0, 1, 0, 0, 0, -2, -1, -1, -2, 1},
                        {0, 0, 0, 0, 0, 2, 0, 0, 0, -2},
                        {0, 2, 0, 0, -2, 0, 0, 0, 0, 0},
                        {0, 0, 1, 0, 0, 0, 1, 0, 0, 0},
                        {0, 0, 0, 1, 0, 0, 0, 1, 0, 0},
                        {0, 0, 0, 0, 1, 0, 0, 0, 1, 0}});
}

}  // namespace

TEST(Cokernel, SingleRelation) {
  auto p = cokernel(IntMatrix::of({{2}}));
  EXPECT_EQ(p.group, (FGAbelianGroup{0, {2}}));
}

TEST(Cokernel, NoRelations) {
  auto p = cokernel(IntMatrix(3, 0));
  EXPECT_EQ(p.group, (FGAbelianGroup{3, {}}));
  EXPECT_EQ(p.change_of_basis, IntMatrix::identity(3));
}

TEST(Cokernel, Example31TranscribedMatrix) {
  // Determinantal divisors of the 7x10 matrix: 1,1,1,1,1,2,4 (computed by
  // minor enumeration before this value was frozen).
  IntMatrix a = example31_matrix();
  EXPECT_EQ(determinantal_divisors(a), (std::vector<Integer>{1, 1, 1, 1, 1, 2, 4}));
  auto p = cokernel(a);
  EXPECT_EQ(p.group, (FGAbelianGroup{0, {2, 2}}));
}

TEST(Cokernel, PresentationCoordinates) {
  // Z^2 / <(2, -2)> = Z (+) Z/2.
  auto p = cokernel(IntMatrix::of({{2}, {-2}}));
  ASSERT_EQ(p.group, (FGAbelianGroup{1, {2}}));
  EXPECT_EQ(abs(determinant(p.change_of_basis)), 1);
  ASSERT_EQ(p.generator_count(), 2u);
  // Relations are zero classes; generator columns map to unit coordinates.
  EXPECT_TRUE(p.is_zero_class({2, -2}));
  EXPECT_FALSE(p.is_zero_class({1, -1}));
  EXPECT_EQ(p.coordinates(p.generators.column(0)), (IntVector{1, 0}));
  EXPECT_EQ(p.coordinates(p.generators.column(1)), (IntVector{0, 1}));
  EXPECT_EQ(p.coordinates({2, -2}), (IntVector{0, 0}));
}

TEST(Cokernel, RandomAgreesWithOracleAndIsInvariant) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    IntMatrix a = trial % 2 ? testkit::random_structured_matrix(rng, 5)
                            : testkit::random_shaped_matrix(rng, 5, -9, 9);
    FGAbelianGroup g = cokernel(a).group;
    EXPECT_TRUE(g.well_formed());
    EXPECT_EQ(g, oracle_cokernel(a)) << a;
    EXPECT_EQ(g.rank, a.rows() - matrix_rank(a));
    if (a.cols() < 2) continue;

    IntMatrix permuted = a;
    permuted.swap_cols(0, a.cols() - 1);
    IntMatrix negated = a;
    negated.negate_col(1);
    IntMatrix added = a;
    added.add_col_multiple(0, 1, 3);
    IntMatrix padded(a.rows(), a.cols() + 2);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) padded(i, j) = a(i, j);
    EXPECT_EQ(cokernel(permuted).group, g);
    EXPECT_EQ(cokernel(negated).group, g);
    EXPECT_EQ(cokernel(added).group, g);
    EXPECT_EQ(cokernel(padded).group, g);
  }
}

TEST(IntegerKernel, Examples) {
  IntMatrix k = integer_kernel(IntMatrix::of({{1, 1}}));
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(k(0, 0), -k(1, 0));
  EXPECT_EQ(abs(k(0, 0)), 1);
  EXPECT_EQ(integer_kernel(IntMatrix::identity(4)).cols(), 0u);

  IntMatrix w = IntMatrix::of({{2, 2, 1, 1, 2, 2, 4}});
  IntMatrix kw = integer_kernel(w);
  EXPECT_EQ(kw.cols(), 6u);
  EXPECT_TRUE((w * kw).is_zero());
}

TEST(IntegerKernel, RandomCompositionAndSaturation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    IntMatrix a = testkit::random_shaped_matrix(rng, 5, -4, 4);
    IntMatrix k = integer_kernel(a);
    EXPECT_TRUE((a * k).is_zero());
    EXPECT_EQ(k.cols(), a.cols() - matrix_rank(a));
    // Saturated: the kernel lattice is a direct summand, so the cokernel of
    // its basis is free.
    EXPECT_TRUE(cokernel(k).group.invariant_factors.empty());
  }
}

TEST(SolveInLattice, Examples) {
  EXPECT_EQ(solve_in_lattice(IntMatrix::identity(3), {4, -1, 7}), (IntVector{4, -1, 7}));
  EXPECT_EQ(solve_in_lattice(IntMatrix::of({{2}, {0}}), {1, 0}), std::nullopt);
  EXPECT_EQ(solve_in_lattice(IntMatrix::of({{2}, {0}}), {4, 0}), (IntVector{2}));
  EXPECT_EQ(solve_in_lattice(IntMatrix::of({{2}, {0}}), {4, 1}), std::nullopt);
  EXPECT_EQ(solve_in_lattice(IntMatrix(2, 0), {0, 0}), (IntVector{}));
}

TEST(SolveInLattice, RejectsDependentBasis) {
  EXPECT_THROW(solve_in_lattice(IntMatrix::of({{1, 2}, {1, 2}}), {1, 1}), std::invalid_argument);
}

TEST(SolveInLattice, RecoversRandomCombinations) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> coeff(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix basis = integer_kernel(testkit::random_matrix(rng, 2, 5, -6, 6));
    IntVector c(basis.cols());
    for (auto& x : c) x = coeff(rng);
    auto solved = solve_in_lattice(basis, basis * c);
    ASSERT_TRUE(solved.has_value());
    EXPECT_EQ(*solved, c);
  }
}

TEST(FGAbelianGroup, WellFormedness) {
  EXPECT_TRUE((FGAbelianGroup{2, {2, 4, 12}}).well_formed());
  EXPECT_FALSE((FGAbelianGroup{0, {2, 3}}).well_formed());
  EXPECT_FALSE((FGAbelianGroup{0, {1}}).well_formed());
  EXPECT_TRUE(FGAbelianGroup{}.is_trivial());
  EXPECT_EQ((FGAbelianGroup{0, {2, 4}}).torsion_order(), 8);
}
