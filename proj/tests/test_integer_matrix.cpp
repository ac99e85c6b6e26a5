#include <gtest/gtest.h>

#include <random>

#include "cartan/integer_matrix.hpp"

using namespace cartan;

namespace {

using M = Matrix<BigInt>;

BigInt det(M a) {
  // Bareiss elimination, exact over the integers.
  const std::size_t n = a.rows();
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

BigInt gcd_big(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// gcd of all k x k minors.
BigInt determinantal_divisor(const M& a, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(a.rows(), k, 0, cur, rs);
  subsets(a.cols(), k, 0, cur, cs);
  BigInt g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      M sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(r[i], c[j]);
      g = gcd_big(g, det(sub));
    }
  return g;
}

void expect_smith(const M& a) {
  const SmithForm<BigInt> s = smith_normal_form(a);
  ASSERT_EQ(s.p * a * s.q, s.n) << a.str();
  ASSERT_EQ(abs_value(det(s.p)), 1);
  ASSERT_EQ(abs_value(det(s.q)), 1);
  BigInt running = 1;
  const std::size_t r = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) {
        ASSERT_EQ(s.n(i, j), 0);
      }
  for (std::size_t i = 0; i < r; ++i) {
    ASSERT_GE(s.n(i, i), 0);
    if (i + 1 < r && s.n(i + 1, i + 1) != 0) {
      ASSERT_EQ(s.n(i + 1, i + 1) % s.n(i, i), 0) << a.str();
    }
    running *= s.n(i, i);
    ASSERT_EQ(running, determinantal_divisor(a, i + 1)) << a.str();
  }
  std::size_t rank = 0;
  while (rank < r && s.n(rank, rank) != 0) ++rank;
  ASSERT_EQ(s.rank, rank);
  ASSERT_EQ(s.rank_deficient, rank < r);
}

RootOfUnity rou(std::int64_t a, std::int64_t m) { return RootOfUnity::from_exponent(a, m); }

bool satisfies(const M& a, const std::vector<RootOfUnity>& x, const std::vector<RootOfUnity>& r) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    RootOfUnity lhs = RootOfUnity::one();
    for (std::size_t j = 0; j < a.cols(); ++j) lhs *= x[j].pow(static_cast<std::int64_t>(a(i, j)));
    if (lhs != r[i]) return false;
  }
  return true;
}

}  // namespace

TEST(Smith, TwoByTwoExample) {
  const M a(2, 2, {2, 1, 0, 3});
  const SmithForm<BigInt> s = smith_normal_form(a);
  EXPECT_EQ(s.n, M(2, 2, {1, 0, 0, 6}));
  expect_smith(a);
}

TEST(Smith, RankDeficient) {
  const M a(2, 3, {2, 4, 6, 1, 2, 3});
  const SmithForm<BigInt> s = smith_normal_form(a);
  EXPECT_EQ(s.rank, 1u);
  EXPECT_TRUE(s.rank_deficient);
  expect_smith(a);
  expect_smith(M(2, 2));
}

TEST(Smith, ClassicExample) {
  const M a(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16});
  EXPECT_EQ(smith_normal_form(a).n, M(3, 3, {2, 0, 0, 0, 6, 0, 0, 0, 12}));
  expect_smith(a);
}

TEST(Smith, RandomMatrices) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> shape(1, 4), entry(-1000, 1000), small(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = static_cast<std::size_t>(shape(rng)), c = static_cast<std::size_t>(shape(rng));
    M a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = trial % 2 ? entry(rng) : small(rng);
    expect_smith(a);
  }
}

TEST(Smith, MachineIntegers) {
  const Matrix<std::int64_t> a(2, 2, {4, 6, 6, 4});
  const SmithForm<std::int64_t> s = smith_normal_form(a);
  EXPECT_EQ(s.p * a * s.q, s.n);
  EXPECT_EQ(s.n, (Matrix<std::int64_t>(2, 2, {2, 0, 0, 10})));
}

TEST(SolveModOne, Examples) {
  const M two(1, 1, {2});
  const auto x = solve_mod_one(two, {RootOfUnity::minus_one()});
  ASSERT_TRUE(x.has_value());
  EXPECT_TRUE(satisfies(two, *x, {RootOfUnity::minus_one()}));
  EXPECT_EQ((*x)[0].pow(4), RootOfUnity::one());
  EXPECT_FALSE(solve_mod_one(M(1, 1, {0}), {RootOfUnity::minus_one()}).has_value());
  EXPECT_TRUE(solve_mod_one(M(1, 1, {0}), {RootOfUnity::one()}).has_value());
  EXPECT_FALSE(solve_mod_one(M(2, 1, {2, 2}), {RootOfUnity::one(), RootOfUnity::minus_one()}).has_value());
  EXPECT_THROW(solve_mod_one(two, {}), std::invalid_argument);
}

TEST(SolveModOne, AgreesWithSearch) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> entry(-3, 3), shape(1, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = static_cast<std::size_t>(shape(rng)), c = static_cast<std::size_t>(shape(rng));
    M a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = entry(rng);
    const std::int64_t m = trial % 3 + 2;
    std::vector<RootOfUnity> rhs;
    for (std::size_t i = 0; i < r; ++i) rhs.push_back(rou(static_cast<std::int64_t>(rng() % static_cast<unsigned>(m)), m));
    const auto x = solve_mod_one(a, rhs);
    if (x) {
      ASSERT_TRUE(satisfies(a, *x, rhs)) << a.str();
      continue;
    }
    // A solution, if any, lies in mu_{m D} with D the top determinantal divisor.
    BigInt d = 1;
    for (std::size_t k = std::min(r, c); k >= 1; --k) {
      d = determinantal_divisor(a, k);
      if (d != 0) break;
    }
    if (d == 0) d = 1;
    const std::int64_t big = m * static_cast<std::int64_t>(d);
    bool found = false;
    for (std::int64_t e0 = 0; e0 < big && !found; ++e0)
      for (std::int64_t e1 = 0; e1 < (c == 2 ? big : 1) && !found; ++e1) {
        std::vector<RootOfUnity> y{rou(e0, big)};
        if (c == 2) y.push_back(rou(e1, big));
        found = satisfies(a, y, rhs);
      }
    ASSERT_FALSE(found) << a.str();
  }
}
