#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cartan.hpp"
#include "catalog.hpp"

using namespace cartan;

namespace {

// Isomorphism invariants: order, abelian flag, element-order histogram, centre and derived subgroup sizes, number of squares.
using Signature = std::tuple<std::size_t, bool, std::map<std::size_t, std::size_t>, std::size_t, std::size_t, std::size_t>;

Signature signature(const FiniteGroupoid& g) {
  std::map<std::size_t, std::size_t> orders;
  std::size_t centre = 0;
  std::vector<Id> commutators;
  std::set<Id> squares;
  for (Id x = 0; x < static_cast<Id>(g.size()); ++x) {
    std::size_t k = 1;
    for (Id y = x; y != 0; y = g.compose(y, x)) ++k;
    ++orders[x == 0 ? 1 : k];
    squares.insert(g.compose(x, x));
    bool central = true;
    for (Id y = 0; y < static_cast<Id>(g.size()); ++y) {
      if (g.compose(x, y) != g.compose(y, x)) central = false;
      commutators.push_back(g.compose(g.compose(g.inverse(x), g.inverse(y)), g.compose(x, y)));
    }
    if (central) ++centre;
  }
  const std::size_t derived = generated_subgroup(g, 0, commutators).size();
  return {g.size(), fixtures::group_is_abelian(g), orders, centre, derived, squares.size()};
}

}  // namespace

TEST(Catalog, FortyTwoDistinctGroups) {
  const auto& groups = fixtures::small_groups();
  ASSERT_EQ(groups.size(), 42u);
  std::set<Signature> seen;
  std::set<std::string> names;
  for (const auto& ng : groups) {
    EXPECT_EQ(ng.group.unit_count(), 1u) << ng.name;
    EXPECT_TRUE(seen.insert(signature(ng.group)).second) << ng.name << " repeats an earlier group";
    EXPECT_TRUE(names.insert(ng.name).second);
  }
}

TEST(Catalog, GroupsPerOrder) {
  // Number of isomorphism classes of groups of each order up to 16.
  const std::map<std::size_t, std::size_t> expected{{1, 1}, {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},  {7, 1},  {8, 5},
                                                    {9, 2}, {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2}, {15, 1}, {16, 14}};
  std::map<std::size_t, std::size_t> got;
  std::size_t abelian = 0;
  for (const auto& ng : fixtures::small_groups()) {
    ++got[ng.group.size()];
    if (ng.abelian) ++abelian;
  }
  EXPECT_EQ(got, expected);
  // Abelian groups of order n <= 16: the sum of partition counts over the prime powers.
  EXPECT_EQ(abelian, 25u);
}

TEST(Catalog, NamedGroups) {
  EXPECT_EQ(fixtures::group_named("Q8").size(), 8u);
  EXPECT_FALSE(fixtures::group_is_abelian(fixtures::group_named("Q8")));
  EXPECT_THROW(fixtures::group_named("nope"), std::invalid_argument);
}

TEST(Catalog, Instances) {
  const auto& inst = fixtures::catalog_instances();
  EXPECT_GE(inst.size(), 200u);
  std::set<std::string> names;
  std::size_t twisted = 0, several_units = 0;
  for (const auto& i : inst) {
    EXPECT_TRUE(names.insert(i.name).second) << i.name;
    if (!i.cocycle.is_trivial()) ++twisted;
    if (i.groupoid().unit_count() > 1) ++several_units;
  }
  EXPECT_GT(twisted, 50u);
  EXPECT_GT(several_units, 20u);
}

TEST(Catalog, PairsAreWideNormal) {
  const auto& pairs = fixtures::catalog_pairs();
  EXPECT_GE(pairs.size(), 1000u);
  for (const auto& p : pairs) {
    const NormalityReport r = is_wide_normal(p.sub);
    ASSERT_TRUE(r.wide && r.in_isotropy && r.normal) << p.name();
  }
}
