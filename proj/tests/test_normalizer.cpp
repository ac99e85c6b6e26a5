#include <gtest/gtest.h>

#include <random>

#include "cartan.hpp"
#include "catalog.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

RootOfUnity rou(std::int64_t a, std::int64_t m) { return RootOfUnity::from_exponent(a, m); }

Cocycle heisenberg2() {
  const FiniteGroupoid g = direct_product(cyclic_group(2), cyclic_group(2));
  return Cocycle::from_exponents(g, 2, [](Id x, Id y) { return (x / 2) * (y % 2); });
}

// f1 * f2 (e') = sum over e in E/T of f1(e) f2(e^-1 e'), with f(z;g) = z f(1;g).
TwistFunction convolve_on_e(const Cocycle& c, const TwistFunction& f1, const TwistFunction& f2) {
  const FiniteGroupoid& g = c.groupoid();
  TwistFunction out;
  for (Id target = 0; target < static_cast<Id>(g.size()); ++target) {
    Cyclotomic sum;
    for (const auto& [x, a] : f1) {
      if (g.range(x) != g.range(target)) continue;
      const auto rest = oracle::emul(c, oracle::einv(c, {RootOfUnity::one(), x}), {RootOfUnity::one(), target});
      auto it = f2.find(rest.second);
      if (it != f2.end()) sum += a * Cyclotomic::root(rest.first) * it->second;
    }
    if (!sum.is_zero()) out[target] = sum;
  }
  return out;
}

// f*(e) = conj(f(e^-1)).
TwistFunction adjoint_on_e(const Cocycle& c, const TwistFunction& f) {
  const FiniteGroupoid& g = c.groupoid();
  TwistFunction out;
  for (Id x = 0; x < static_cast<Id>(g.size()); ++x) {
    const auto inv = oracle::einv(c, {RootOfUnity::one(), x});
    auto it = f.find(inv.second);
    if (it != f.end()) out[x] = (Cyclotomic::root(inv.first) * it->second).conj();
  }
  return out;
}

TwistFunction random_function(std::mt19937& rng, std::size_t n) {
  TwistFunction f;
  for (Id x = 0; x < static_cast<Id>(n); ++x)
    if (rng() % 3 == 0) f[x] = Cyclotomic::root(rou(static_cast<std::int64_t>(rng() % 8), 8), Rational(1 + static_cast<int>(rng() % 3)));
  return f;
}

}  // namespace

TEST(Convolution, UnitIndicatorIsIdentity) {
  for (const auto& inst : fixtures::catalog_instances()) {
    const Cocycle& c = inst.cocycle;
    const FiniteGroupoid& g = c.groupoid();
    BisectionFunction units;
    for (Id u : g.units()) units.emplace(u, Scalar{});
    for (Id x = 0; x < static_cast<Id>(g.size()); ++x) {
      const BisectionFunction f = singleton(x, Scalar{Rational(2, 3), rou(1, 4)});
      EXPECT_EQ(convolve(c, units, f), f);
      EXPECT_EQ(convolve(c, f, units), f);
    }
  }
}

TEST(Convolution, SingletonsMatchTheDefinition) {
  for (const auto& inst : fixtures::catalog_instances()) {
    const Cocycle& c = inst.cocycle;
    const FiniteGroupoid& g = c.groupoid();
    for (Id x = 0; x < static_cast<Id>(g.size()); ++x)
      for (Id y = 0; y < static_cast<Id>(g.size()); ++y) {
        const BisectionFunction prod = convolve(c, singleton(x), singleton(y));
        const TwistFunction want = convolve_on_e(c, {{x, Cyclotomic::rational(1)}}, {{y, Cyclotomic::rational(1)}});
        ASSERT_EQ(to_twist_function(prod), want) << inst.name;
        if (g.composable(x, y)) {
          EXPECT_EQ(prod.at(g.compose(x, y)).phase, c(x, y).conj());
        } else {
          EXPECT_TRUE(prod.empty());
        }
      }
  }
}

TEST(Convolution, GeneralFunctionsMatchTheDefinition) {
  std::mt19937 rng(17);
  const auto& instances = fixtures::catalog_instances();
  for (int trial = 0; trial < 300; ++trial) {
    const Cocycle& c = instances[rng() % instances.size()].cocycle;
    const std::size_t n = c.groupoid().size();
    const TwistFunction f1 = random_function(rng, n), f2 = random_function(rng, n);
    ASSERT_EQ(convolve(c, f1, f2), convolve_on_e(c, f1, f2));
    ASSERT_EQ(adjoint(c, f1), adjoint_on_e(c, f1));
  }
}

TEST(Convolution, BisectionAdjointMatchesDefinition) {
  for (const auto& inst : fixtures::catalog_instances()) {
    const Cocycle& c = inst.cocycle;
    for (Id x = 0; x < static_cast<Id>(c.groupoid().size()); ++x) {
      const BisectionFunction f = singleton(x, Scalar{3, rou(1, 8)});
      EXPECT_EQ(to_twist_function(adjoint(c, f)), adjoint_on_e(c, to_twist_function(f)));
    }
  }
}

TEST(Convolution, NonBisectionsAreRejected) {
  const FiniteGroupoid g = pair_groupoid(2);
  const Cocycle c = Cocycle::trivial(g);
  BisectionFunction all;
  for (Id x = 0; x < 4; ++x) all.emplace(x, Scalar{});
  EXPECT_FALSE(is_bisection(g, all));
  EXPECT_THROW(convolve(c, all, all), Error);
  EXPECT_FALSE(is_bisection(g, singleton(0, Scalar{0, RootOfUnity::one()})));
}

TEST(Expect, KeepsOnlyTheSubgroupoidPart) {
  const Cocycle c = heisenberg2();
  const Subgroupoid s = Subgroupoid::make(c.groupoid(), {0, 2});
  const BisectionFunction in = singleton(2, Scalar{2, rou(1, 2)});
  EXPECT_EQ(expect(s, in), in);
  EXPECT_TRUE(expect(s, singleton(1)).empty());
  // Units of the pair groupoid form a bisection together with nothing else; use two units.
  const FiniteGroupoid g = disjoint_union(cyclic_group(2), cyclic_group(2));
  const Subgroupoid units = Subgroupoid::units_of(g);
  const BisectionFunction mixed{{0, Scalar{}}, {3, Scalar{}}};
  ASSERT_TRUE(is_bisection(g, mixed));
  EXPECT_EQ(expect(units, mixed), (BisectionFunction{{0, Scalar{}}}));
}

TEST(AlphaN, Examples) {
  const Cocycle c = heisenberg2();
  const TwistedPair tp = TwistedPair::build(c, Subgroupoid::make(c.groupoid(), {0, 2}));
  for (Id x = 0; x < 2; ++x) {
    const TwistedCharacter& kappa = tp.point(x);
    EXPECT_EQ(alpha_n(tp, singleton(0), kappa), kappa);
    EXPECT_EQ(alpha_n(tp, singleton(1), kappa), act(tp, section(1), kappa));
    EXPECT_EQ(alpha_n(tp, singleton(1, Scalar{5, rou(1, 2)}), kappa), alpha_n(tp, singleton(1), kappa));
  }
  const FiniteGroupoid g = pair_groupoid(2);
  const TwistedPair pp = TwistedPair::build(Cocycle::trivial(g), Subgroupoid::units_of(g));
  EXPECT_THROW(alpha_n(pp, singleton(0), pp.point(1)), Error);
}

TEST(AlphaN, RespectsComposition) {
  for (const auto& pair : fixtures::catalog_pairs()) {
    const TwistedPair tp = TwistedPair::build(pair.instance->cocycle, pair.sub);
    const FiniteGroupoid& g = tp.groupoid();
    for (Id x = 0; x < static_cast<Id>(tp.point_count()); ++x) {
      const TwistedCharacter& kappa = tp.point(x);
      for (Id a = 0; a < static_cast<Id>(g.size()); ++a) {
        if (g.source(a) != kappa.unit) continue;
        const BisectionFunction n = singleton(a, Scalar{1, rou(1, 4)});
        for (Id b = 0; b < static_cast<Id>(g.size()); ++b) {
          if (g.source(b) != g.range(a)) continue;
          const BisectionFunction m = singleton(b, Scalar{2, rou(3, 8)});
          ASSERT_EQ(alpha_n(tp, convolve(tp.twist(), m, n), kappa), alpha_n(tp, m, alpha_n(tp, n, kappa))) << pair.name();
        }
      }
    }
  }
}

TEST(WeylEquivalent, Reflexive) {
  for (const auto& pair : fixtures::catalog_pairs()) {
    const TwistedPair tp = TwistedPair::build(pair.instance->cocycle, pair.sub);
    const FiniteGroupoid& g = tp.groupoid();
    for (Id x = 0; x < static_cast<Id>(tp.point_count()); ++x)
      for (Id a = 0; a < static_cast<Id>(g.size()); ++a) {
        if (g.source(a) != tp.point_unit(x)) continue;
        const BisectionFunction n = singleton(a, Scalar{Rational(1, 2), rou(1, 4)});
        ASSERT_TRUE(weyl_equivalent(tp, n, n, x, WeylMode::Twist)) << pair.name();
        ASSERT_TRUE(weyl_equivalent(tp, n, n, x, WeylMode::Groupoid)) << pair.name();
      }
  }
}

TEST(WeylEquivalent, PositiveUnitFactor) {
  const FiniteGroupoid g = disjoint_union(dihedral_group(3), cyclic_group(2));
  const Cocycle c = Cocycle::trivial(g);
  const TwistedPair tp = TwistedPair::build(c, Subgroupoid::units_of(g));
  // b is positive on both units; n b and n agree up to the positive factor.
  const BisectionFunction b{{0, Scalar{3, RootOfUnity::one()}}, {1, Scalar{Rational(1, 5), RootOfUnity::one()}}};
  for (Id x = 0; x < static_cast<Id>(tp.point_count()); ++x)
    for (Id a = 0; a < static_cast<Id>(g.size()); ++a) {
      if (g.source(a) != tp.point_unit(x)) continue;
      const BisectionFunction n = singleton(a, Scalar{1, rou(1, 3)});
      EXPECT_TRUE(weyl_equivalent(tp, n, convolve(c, n, b), x, WeylMode::Twist));
    }
}

TEST(WeylEquivalent, PhaseSeparatesTwistFromGroupoid) {
  const Cocycle c = heisenberg2();
  const TwistedPair tp = TwistedPair::build(c, Subgroupoid::make(c.groupoid(), {0, 2}));
  // e = (1;(1,0)), sigma = (1;(0,1)), e sigma = (1;(1,1)).
  ASSERT_EQ(twist_mul(c, section(1), section(2)), section(3));
  const BisectionFunction n = singleton(1), m = singleton(3);
  for (Id x = 0; x < 2; ++x) {
    const bool kills_sigma = tp.point(x).at(2).is_one();
    const CriteriaReport twist = weyl_criteria(tp, n, m, x, WeylMode::Twist);
    EXPECT_EQ(twist.first, kills_sigma);
    EXPECT_EQ(twist.second, kills_sigma);
    EXPECT_EQ(twist.third, kills_sigma);
    EXPECT_EQ(weyl_equivalent(tp, n, m, x, WeylMode::Twist), kills_sigma);
    EXPECT_TRUE(weyl_equivalent(tp, n, m, x, WeylMode::Groupoid));
  }
}

TEST(WeylEquivalent, CriteriaAgreeAndTwistRefinesGroupoid) {
  std::mt19937 rng(101);
  const auto& pairs = fixtures::catalog_pairs();
  for (int trial = 0; trial < 400; ++trial) {
    const auto& pair = pairs[rng() % pairs.size()];
    const TwistedPair tp = TwistedPair::build(pair.instance->cocycle, pair.sub);
    const FiniteGroupoid& g = tp.groupoid();
    const Id x = static_cast<Id>(rng() % tp.point_count());
    std::vector<Id> over;
    for (Id a = 0; a < static_cast<Id>(g.size()); ++a)
      if (g.source(a) == tp.point_unit(x)) over.push_back(a);
    const std::int64_t m = 2 * tp.twist().modulus();
    const BisectionFunction n1 = singleton(over[rng() % over.size()], Scalar{1 + static_cast<int>(rng() % 3), rou(static_cast<std::int64_t>(rng()), m)});
    const BisectionFunction n2 = singleton(over[rng() % over.size()], Scalar{1 + static_cast<int>(rng() % 3), rou(static_cast<std::int64_t>(rng()), m)});
    const CriteriaReport t = weyl_criteria(tp, n1, n2, x, WeylMode::Twist);
    const CriteriaReport gr = weyl_criteria(tp, n1, n2, x, WeylMode::Groupoid);
    ASSERT_TRUE(t.first == t.second && t.second == t.third) << pair.name();
    ASSERT_TRUE(gr.first == gr.second && gr.second == gr.third) << pair.name();
    ASSERT_TRUE(!t.first || gr.first) << pair.name();
  }
}
