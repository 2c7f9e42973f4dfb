#include <gtest/gtest.h>

#include "brownian/dyadic.hpp"

using brownian::Dyadic;
using brownian::canonicalize;
using brownian::parse_dyadic;

TEST(Dyadic, CanonicalizeDividesCommonFactor) {
  const Dyadic d = canonicalize(6, 3);
  EXPECT_EQ(d.numerator(), 3u);
  EXPECT_EQ(d.level(), 2u);
}

TEST(Dyadic, CanonicalizeZero) {
  const Dyadic d = canonicalize(0, 5);
  EXPECT_EQ(d.numerator(), 0u);
  EXPECT_EQ(d.level(), 0u);
}

TEST(Dyadic, CanonicalizeOddUnchanged) {
  const Dyadic d = canonicalize(7, 4);
  EXPECT_EQ(d.numerator(), 7u);
  EXPECT_EQ(d.level(), 4u);
}

TEST(Dyadic, EqualValuesCompareEqual) {
  EXPECT_EQ(canonicalize(4, 3), canonicalize(1, 1));
  EXPECT_EQ(canonicalize(8, 3), Dyadic::integer(1));
  static_assert(canonicalize(12, 4) == canonicalize(3, 2));
}

TEST(Dyadic, Ordering) {
  EXPECT_LT(canonicalize(1, 2), canonicalize(1, 1));
  EXPECT_LT(canonicalize(1, 1), canonicalize(3, 2));
  EXPECT_GT(Dyadic::integer(2), canonicalize(63, 5));
  EXPECT_LT(Dyadic::integer(0), canonicalize(1, 60));
  EXPECT_LT(canonicalize(1, 63), canonicalize(1, 62));
  EXPECT_GT(Dyadic::integer(1), canonicalize((1ull << 62) - 1, 62));
}

TEST(Dyadic, Value) {
  EXPECT_DOUBLE_EQ(canonicalize(3, 2).value(), 0.75);
  EXPECT_DOUBLE_EQ(canonicalize(7, 4).value(), 0.4375);
}

TEST(Dyadic, IndexAt) {
  EXPECT_EQ(canonicalize(3, 2).index_at(4), 12u);
  EXPECT_FALSE(canonicalize(3, 2).index_at(1).has_value());
  EXPECT_EQ(Dyadic::integer(0).index_at(30), 0u);
  EXPECT_TRUE(canonicalize(3, 2).on_grid(2));
  EXPECT_FALSE(canonicalize(3, 2).on_grid(1));
}

TEST(Dyadic, ToDecimalIsExact) {
  EXPECT_EQ(Dyadic::integer(3).to_decimal(), "3");
  EXPECT_EQ(canonicalize(1, 2).to_decimal(), "0.25");
  EXPECT_EQ(canonicalize(3, 1).to_decimal(), "1.5");
  EXPECT_EQ(canonicalize(1, 9).to_decimal(), "0.001953125");
  EXPECT_EQ(canonicalize(257, 8).to_decimal(), "1.00390625");
}

TEST(Dyadic, Subtract) {
  EXPECT_EQ(brownian::subtract(Dyadic::integer(1), canonicalize(1, 2)), canonicalize(3, 2));
  EXPECT_EQ(brownian::subtract(canonicalize(3, 2), canonicalize(1, 2)), canonicalize(1, 1));
  EXPECT_EQ(brownian::subtract(canonicalize(3, 2), canonicalize(3, 2)), Dyadic::integer(0));
  EXPECT_THROW(brownian::subtract(canonicalize(1, 2), canonicalize(1, 1)), std::invalid_argument);
}

TEST(Dyadic, Parse) {
  EXPECT_EQ(parse_dyadic("3/2^2"), canonicalize(3, 2));
  EXPECT_EQ(parse_dyadic("6/8"), canonicalize(3, 2));
  EXPECT_EQ(parse_dyadic("0.375"), canonicalize(3, 3));
  EXPECT_EQ(parse_dyadic("2"), Dyadic::integer(2));
  EXPECT_EQ(parse_dyadic(".5"), canonicalize(1, 1));
  EXPECT_FALSE(parse_dyadic("0.1").has_value());
  EXPECT_FALSE(parse_dyadic("1/3").has_value());
  EXPECT_FALSE(parse_dyadic("-1").has_value());
  EXPECT_FALSE(parse_dyadic("").has_value());
  EXPECT_FALSE(parse_dyadic("1/0").has_value());
}

TEST(Dyadic, ParseRoundTripsDecimal) {
  for (std::uint64_t k = 0; k < 300; k += 7) {
    const Dyadic d = canonicalize(k, 6);
    EXPECT_EQ(parse_dyadic(d.to_decimal()), d) << d.to_decimal();
  }
}
