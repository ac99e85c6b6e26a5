#pragma once

// Cross-checks between the Cartan/diagonal conditions and the Weyl groupoid on one instance.

#include <optional>
#include <string>
#include <vector>

#include "cartan/cartan_diag.hpp"
#include "cartan/constructions.hpp"
#include "cartan/weyl.hpp"

namespace cartan {

struct EquivalenceReport {
  CartanVerdict cartan;
  bool diag_S = false;
  bool diag_B = false;
  bool weyl_built = false;
  bool principal = false;
  bool free = false;
  bool iso_characterization = false;
  std::optional<bool> trivializable;
  std::vector<std::string> failures;

  bool consistent() const { return failures.empty(); }
};

// S(u) cannot be enlarged inside G(u) while keeping an abelian twist.
inline bool is_maximal_abelian(const Cocycle& c, const Subgroupoid& s) {
  const FiniteGroupoid& g = c.groupoid();
  for (Id u = 0; u < static_cast<Id>(g.unit_count()); ++u) {
    for (Id x : g.isotropy_group(u)) {
      if (s.contains(x)) continue;
      std::vector<Id> gens = s.fiber(u);
      gens.push_back(x);
      const FiberGroup h(g, generated_subgroup(g, u, gens));
      bool abelian = h.is_abelian();
      for (int i = 0; abelian && i < static_cast<int>(h.size()); ++i)
        for (int j = 0; j < i; ++j)
          if (c(h.element(i), h.element(j)) != c(h.element(j), h.element(i))) {
            abelian = false;
            break;
          }
      if (abelian) return false;
    }
  }
  return true;
}

inline bool isotropy_is_abelian(const FiniteGroupoid& g) {
  for (Id u = 0; u < static_cast<Id>(g.unit_count()); ++u)
    if (!FiberGroup(g, g.isotropy_group(u)).is_abelian()) return false;
  return true;
}

inline EquivalenceReport equivalence_suite(const Cocycle& c, const Subgroupoid& s, bool solve_twist = true) {
  EquivalenceReport r;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
  };
  r.cartan = check_cartan(c, s);
  r.diag_S = check_diag_S(c, s);
  r.diag_B = check_diag_B(c, s);
  const bool buildable = r.cartan.wide && r.cartan.normal && r.cartan.abelian;
  if (buildable) {
    const TwistedPair p = TwistedPair::build(c, s);
    const ActionGroupoid w = build_weyl_groupoid(p);
    r.weyl_built = true;
    r.principal = is_principal(w);
    r.free = is_free(w);
    r.iso_characterization = check_iso_characterization(p, w);
    expect(r.iso_characterization, "isotropy of W differs from the commutator predicate");
    expect(r.principal == is_topologically_free_finite(w), "principal and free disagree");
    if (solve_twist && r.cartan.cartan) r.trivializable = weyl_twist_trivializable(c, s).has_value();
  }
  expect(r.diag_S == r.diag_B, "diag_S and diag_B disagree");
  expect(r.diag_S == (r.cartan.cartan && r.principal), "diag_S differs from cartan and principal W");
  expect(!r.cartan.cartan || r.principal, "Cartan pair with non-principal W");
  expect(r.cartan.cartan == (r.principal && r.cartan.max && r.cartan.ricc), "cartan differs from effective W with max and ricc");
  expect(!r.diag_S || (r.cartan.max && r.cartan.ricc), "diagonal without max and ricc");
  expect(!r.diag_S || r.free, "diagonal with non-free W");
  expect(!r.diag_S || is_maximal_abelian(c, s), "diagonal S is not maximal abelian");
  if (c.is_trivial()) {
    const bool predicted = s == isotropy(c.groupoid()) && isotropy_is_abelian(c.groupoid());
    expect(r.diag_S == predicted, "untwisted prediction fails");
  }
  return r;
}

}  // namespace cartan
