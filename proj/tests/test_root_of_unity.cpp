#include <gtest/gtest.h>

#include <random>

#include "cartan/cyclotomic.hpp"
#include "cartan/root_of_unity.hpp"

using namespace cartan;

TEST(RootOfUnity, ReducesToLowestTerms) {
  const auto z = RootOfUnity::from_exponent(6, 8);
  EXPECT_EQ(z.numerator(), 3);
  EXPECT_EQ(z.modulus(), 4);
  EXPECT_EQ(RootOfUnity::from_exponent(-1, 4), RootOfUnity::from_exponent(3, 4));
  EXPECT_TRUE(RootOfUnity::from_exponent(5, 5).is_one());
}

TEST(RootOfUnity, MixedModuliCompareAfterLifting) {
  const auto half = RootOfUnity::from_exponent(1, 2);
  EXPECT_EQ(half, RootOfUnity::from_exponent(2, 4));
  EXPECT_EQ(RootOfUnity::from_exponent(1, 4) * RootOfUnity::from_exponent(1, 4), half);
  EXPECT_EQ(RootOfUnity::from_exponent(1, 3) * RootOfUnity::from_exponent(1, 6), half);
  EXPECT_EQ(half.exponent_in(4), 2);
}

TEST(RootOfUnity, InverseAndPowers) {
  const auto i = RootOfUnity::from_exponent(1, 4);
  EXPECT_EQ(i.conj(), RootOfUnity::from_exponent(3, 4));
  EXPECT_TRUE((i * i.conj()).is_one());
  EXPECT_EQ(i.pow(2), RootOfUnity::minus_one());
  EXPECT_EQ(i.pow(-1), i.conj());
  EXPECT_EQ(i.order(), 4);
}

TEST(RootOfUnity, RootPicksSmallestExponent) {
  // Square roots of -1 are 1/4 and 3/4.
  EXPECT_EQ(RootOfUnity::minus_one().root(2), RootOfUnity::from_exponent(1, 4));
  EXPECT_TRUE(RootOfUnity::one().root(5).is_one());
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 24), n = 1 + static_cast<std::int64_t>(rng() % 6);
    const auto z = RootOfUnity::from_exponent(static_cast<std::int64_t>(rng() % 100), m);
    EXPECT_EQ(z.root(n).pow(n), z);
  }
}

TEST(Cyclotomic, SumOfAllRootsVanishes) {
  for (std::int64_t n = 2; n <= 12; ++n) {
    Cyclotomic sum;
    for (std::int64_t k = 0; k < n; ++k) sum += Cyclotomic::root(RootOfUnity::from_exponent(k, n));
    EXPECT_TRUE(sum.is_zero()) << n;
  }
}

TEST(Cyclotomic, ClassicalIdentities) {
  const auto w = Cyclotomic::root(RootOfUnity::from_exponent(1, 3));
  const auto w2 = Cyclotomic::root(RootOfUnity::from_exponent(2, 3));
  EXPECT_EQ((w - w2) * (w - w2), Cyclotomic::rational(-3));
  const auto z8 = Cyclotomic::root(RootOfUnity::from_exponent(1, 8));
  const auto sqrt2 = z8 + z8.conj();
  EXPECT_EQ(sqrt2 * sqrt2, Cyclotomic::rational(2));
  EXPECT_FALSE(sqrt2.as_rational().has_value());
  const auto i = Cyclotomic::root(RootOfUnity::from_exponent(1, 4));
  EXPECT_EQ(i * i, Cyclotomic::rational(-1));
}

TEST(Cyclotomic, PositivityIsExact) {
  EXPECT_TRUE(Cyclotomic::rational(Rational(3, 2)).is_positive_rational());
  EXPECT_FALSE(Cyclotomic::rational(-1).is_positive_rational());
  EXPECT_FALSE(Cyclotomic().is_positive_rational());
  EXPECT_FALSE(Cyclotomic::root(RootOfUnity::from_exponent(1, 4)).is_positive_rational());
  // 1 + w + w^2 = 0 then adding 2 gives the rational 2.
  const auto w = Cyclotomic::root(RootOfUnity::from_exponent(1, 3));
  EXPECT_TRUE((Cyclotomic::rational(3) + w + w * w).is_positive_rational());
}

TEST(Cyclotomic, ConjugationIsMultiplicative) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Cyclotomic a, b;
    for (int k = 0; k < 3; ++k) {
      a += Cyclotomic::root(RootOfUnity::from_exponent(static_cast<std::int64_t>(rng() % 12), 12), Rational(static_cast<int>(rng() % 5) - 2));
      b += Cyclotomic::root(RootOfUnity::from_exponent(static_cast<std::int64_t>(rng() % 8), 8), Rational(static_cast<int>(rng() % 5) - 2));
    }
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ(a * b, b * a);
  }
}
