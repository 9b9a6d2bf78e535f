#include <gtest/gtest.h>

#include <sstream>

#include "chowfiber/int_matrix.hpp"

using namespace chowfiber;

TEST(IntMatrix, ShapeAndAccess) {
  IntMatrix m = IntMatrix::of({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m.entries().size(), 6u);
  EXPECT_EQ(m(1, 2), 6);
  EXPECT_EQ(m.column(1), (IntVector{2, 5}));
  EXPECT_EQ(m.transposed()(2, 1), 6);
}

TEST(IntMatrix, EmptyShapesAreLegal) {
  IntMatrix a(3, 0), b(0, 2);
  IntMatrix p = a * b;
  EXPECT_EQ(p.rows(), 3u);
  EXPECT_EQ(p.cols(), 2u);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(IntMatrix(0, 3) * a, IntMatrix(0, 0));
  EXPECT_THROW(b * a, std::invalid_argument);
  EXPECT_EQ(IntMatrix::identity(0), IntMatrix());
}

TEST(IntMatrix, ProductIsExactBeyond64Bits) {
  IntMatrix a = IntMatrix::of({{1L << 40, 0}, {0, 1}});
  IntMatrix sq = a * a;
  EXPECT_EQ(sq(0, 0), Integer("1208925819614629174706176"));  // 2^80
}

TEST(IntMatrix, RaggedLiteralThrows) {
  EXPECT_THROW(IntMatrix::of({{1, 2}, {3}}), std::invalid_argument);
}

TEST(MatrixText, ParsesCommentsAndBlankLines) {
  IntMatrix m = parse_matrix_text("# a comment\n\n2 2\n 2 4\n\n# mid\n6 -8\n");
  EXPECT_EQ(m, IntMatrix::of({{2, 4}, {6, -8}}));
}

TEST(MatrixText, ParsesZeroSizedAndHugeEntries) {
  EXPECT_EQ(parse_matrix_text("0 0\n"), IntMatrix());
  IntMatrix col = parse_matrix_text("3 0\n\n\n");
  EXPECT_EQ(col.rows(), 3u);
  // Rows of a 3x0 matrix are empty lines, which are skipped; an R x 0 matrix
  // therefore needs no row lines at all.
  IntMatrix big = parse_matrix_text("1 1\n123456789012345678901234567890\n");
  EXPECT_EQ(big(0, 0), Integer("123456789012345678901234567890"));
}

TEST(MatrixText, ReportsLineOfError) {
  try {
    parse_matrix_text("2 2\n1 2\n3 x\n");
    FAIL() << "expected MatrixParseError";
  } catch (const MatrixParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_matrix_text(""), MatrixParseError);
  EXPECT_THROW(parse_matrix_text("2 2\n1 2\n"), MatrixParseError);
  EXPECT_THROW(parse_matrix_text("1 2\n1 2 3\n"), MatrixParseError);
  EXPECT_THROW(parse_matrix_text("-1 2\n"), MatrixParseError);
  EXPECT_THROW(parse_matrix_text("1 1\n1\n2\n"), MatrixParseError);
}

TEST(MatrixText, WriteThenReadIsIdentity) {
  IntMatrix m = IntMatrix::of({{-2, 0, 7}, {1, 1, -1}});
  std::ostringstream out;
  write_matrix_text(out, m);
  EXPECT_EQ(parse_matrix_text(out.str()), m);
}
