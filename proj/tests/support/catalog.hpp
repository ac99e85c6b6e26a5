#pragma once

// Test catalog: all groups of order <= 16, group bundles and action groupoids up to 24
// elements, cocycles over mu_M for M in {1, 2, 4}, and every wide normal subgroupoid with
// an abelian twist.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cartan.hpp"

namespace cartan::fixtures {

struct NamedGroup {
  std::string name;
  FiniteGroupoid group;
  bool abelian = false;
};

inline FiniteGroupoid permutation_group(const std::vector<std::vector<int>>& gens) {
  using Perm = std::vector<int>;
  Perm id(gens[0].size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  return group_from_generators<Perm>(id, gens, [](const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
  });
}

// 2x2 matrices over Z[i], entries stored as (re, im) pairs.
inline FiniteGroupoid gaussian_matrix_group(const std::vector<std::array<int, 8>>& gens) {
  using M = std::array<int, 8>;
  auto mul = [](const M& a, const M& b) {
    M c{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        int re = 0, im = 0;
        for (int k = 0; k < 2; ++k) {
          const int ar = a[(i * 2 + k) * 2], ai = a[(i * 2 + k) * 2 + 1];
          const int br = b[(k * 2 + j) * 2], bi = b[(k * 2 + j) * 2 + 1];
          re += ar * br - ai * bi;
          im += ar * bi + ai * br;
        }
        c[(i * 2 + j) * 2] = re;
        c[(i * 2 + j) * 2 + 1] = im;
      }
    return c;
  };
  return group_from_generators<M>(M{1, 0, 0, 0, 0, 0, 1, 0}, gens, mul);
}

inline bool group_is_abelian(const FiniteGroupoid& g) {
  for (Id x = 0; x < static_cast<Id>(g.size()); ++x)
    for (Id y = 0; y < static_cast<Id>(g.size()); ++y)
      if (g.compose(x, y) != g.compose(y, x)) return false;
  return true;
}

inline FiniteGroupoid product_of(const std::vector<std::size_t>& orders) {
  FiniteGroupoid g = cyclic_group(orders[0]);
  for (std::size_t i = 1; i < orders.size(); ++i) g = direct_product(g, cyclic_group(orders[i]));
  return g;
}

inline const std::vector<NamedGroup>& small_groups() {
  static const std::vector<NamedGroup> groups = [] {
    std::vector<std::pair<std::string, FiniteGroupoid>> list;
    auto cyc = [&](std::vector<std::size_t> orders) {
      std::string name;
      for (std::size_t o : orders) name += (name.empty() ? "C" : "xC") + std::to_string(o);
      list.emplace_back(name, product_of(orders));
    };
    cyc({1});
    cyc({2});
    cyc({3});
    cyc({4});
    cyc({2, 2});
    cyc({5});
    cyc({6});
    list.emplace_back("S3", dihedral_group(3));
    cyc({7});
    cyc({8});
    cyc({4, 2});
    cyc({2, 2, 2});
    list.emplace_back("D4", dihedral_group(4));
    list.emplace_back("Q8", dicyclic_group(2));
    cyc({9});
    cyc({3, 3});
    cyc({10});
    list.emplace_back("D5", dihedral_group(5));
    cyc({11});
    cyc({12});
    cyc({6, 2});
    list.emplace_back("D6", dihedral_group(6));
    list.emplace_back("Dic3", dicyclic_group(3));
    list.emplace_back("A4", permutation_group({{1, 2, 0, 3}, {1, 0, 3, 2}}));
    cyc({13});
    cyc({14});
    list.emplace_back("D7", dihedral_group(7));
    cyc({15});
    cyc({16});
    cyc({8, 2});
    cyc({4, 4});
    cyc({4, 2, 2});
    cyc({2, 2, 2, 2});
    list.emplace_back("D8", dihedral_group(8));
    list.emplace_back("Q16", dicyclic_group(4));
    list.emplace_back("SD16", metacyclic_group(8, 2, 3, 0));
    list.emplace_back("M16", metacyclic_group(8, 2, 5, 0));
    list.emplace_back("C4:C4", metacyclic_group(4, 4, -1, 0));
    list.emplace_back("C2xD4", direct_product(cyclic_group(2), dihedral_group(4)));
    list.emplace_back("C2xQ8", direct_product(cyclic_group(2), dicyclic_group(2)));
    // Pauli group <X, Z, iI>.
    list.emplace_back("Pauli", gaussian_matrix_group({{0, 0, 1, 0, 1, 0, 0, 0}, {1, 0, 0, 0, 0, 0, -1, 0}, {0, 1, 0, 0, 0, 0, 0, 1}}));
    // (C2 x C2) x| C4 with the generator of C4 swapping the two factors, on 8 points.
    list.emplace_back("C2^2:C4", permutation_group({{1, 0, 2, 3, 4, 5, 6, 7}, {2, 3, 0, 1, 5, 6, 7, 4}}));
    std::vector<NamedGroup> out;
    for (auto& [name, g] : list) out.push_back({name, g, group_is_abelian(g)});
    return out;
  }();
  return groups;
}

inline const FiniteGroupoid& group_named(const std::string& name) {
  for (const auto& g : small_groups())
    if (g.name == name) return g.group;
  throw std::invalid_argument("no catalog group " + name);
}

// Homomorphisms G -> Z/d for a group G, as value tables.
inline std::vector<std::vector<std::int64_t>> homomorphisms_to_cyclic(const FiniteGroupoid& g, std::int64_t d) {
  // Greedy generating set.
  std::vector<Id> gens;
  std::vector<Id> span{0};
  while (span.size() < g.size()) {
    for (Id x = 0; x < static_cast<Id>(g.size()); ++x)
      if (std::find(span.begin(), span.end(), x) == span.end()) {
        gens.push_back(x);
        break;
      }
    span = generated_subgroup(g, 0, gens);
  }
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> img(gens.size(), 0);
  while (true) {
    // Extend along the Cayley graph, then verify on the full table.
    std::vector<std::int64_t> val(g.size(), -1);
    val[0] = 0;
    std::vector<Id> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const Id y = g.compose(queue[i], gens[k]);
        if (val[static_cast<std::size_t>(y)] < 0) {
          val[static_cast<std::size_t>(y)] = (val[static_cast<std::size_t>(queue[i])] + img[k]) % d;
          queue.push_back(y);
        }
      }
    bool hom = true;
    for (Id x = 0; x < static_cast<Id>(g.size()) && hom; ++x)
      for (Id y = 0; y < static_cast<Id>(g.size()); ++y)
        if ((val[static_cast<std::size_t>(x)] + val[static_cast<std::size_t>(y)]) % d != val[static_cast<std::size_t>(g.compose(x, y))]) {
          hom = false;
          break;
        }
    if (hom) out.push_back(val);
    std::size_t k = 0;
    while (k < img.size() && ++img[k] == d) img[k++] = 0;
    if (k == img.size()) break;
  }
  return out;
}

// Exponent function of a group cocycle over mu_M.
struct GroupCocycle {
  std::string name;
  std::int64_t modulus = 1;
  std::function<std::int64_t(Id, Id)> exponent;
};

inline std::vector<GroupCocycle> group_cocycles(const FiniteGroupoid& h, std::uint32_t seed) {
  std::vector<GroupCocycle> out;
  out.push_back({"trivial", 1, [](Id, Id) { return std::int64_t{0}; }});
  std::mt19937 rng(seed);
  auto coboundary = [&](std::int64_t m) {
    std::vector<std::int64_t> b(h.size());
    std::uniform_int_distribution<std::int64_t> dist(0, m - 1);
    for (auto& v : b) v = dist(rng);
    b[0] = 0;
    return [b, h, m](Id x, Id y) {
      return floor_mod(b[static_cast<std::size_t>(x)] + b[static_cast<std::size_t>(y)] - b[static_cast<std::size_t>(h.compose(x, y))], m);
    };
  };
  if (h.size() > 1) out.push_back({"coboundary2", 2, coboundary(2)});
  for (std::int64_t m : {2, 4}) {
    const auto homs = homomorphisms_to_cyclic(h, m);
    bool found = false;
    for (std::size_t i = 0; i < homs.size() && !found; ++i)
      for (std::size_t j = 0; j < homs.size() && !found; ++j) {
        const auto& a = homs[i];
        const auto& b = homs[j];
        bool antisymmetric = false;
        for (Id x = 0; x < static_cast<Id>(h.size()) && !antisymmetric; ++x)
          for (Id y = 0; y < static_cast<Id>(h.size()); ++y)
            if ((a[static_cast<std::size_t>(x)] * b[static_cast<std::size_t>(y)] - a[static_cast<std::size_t>(y)] * b[static_cast<std::size_t>(x)]) % m != 0) {
              antisymmetric = true;
              break;
            }
        if (!antisymmetric) continue;
        found = true;
        auto bil = [a, b, m](Id x, Id y) { return (a[static_cast<std::size_t>(x)] * b[static_cast<std::size_t>(y)]) % m; };
        out.push_back({"bilinear" + std::to_string(m), m, bil});
        auto cb = coboundary(m);
        out.push_back({"bilinear" + std::to_string(m) + "+coboundary", m, [bil, cb, m](Id x, Id y) { return (bil(x, y) + cb(x, y)) % m; }});
      }
  }
  return out;
}

struct CatalogInstance {
  std::string name;
  Cocycle cocycle;
  const FiniteGroupoid& groupoid() const { return cocycle.groupoid(); }
};

// Pulls back every cocycle of the group h along phi: G -> h.
inline void add_pullbacks(std::vector<CatalogInstance>& out, const std::string& name, const FiniteGroupoid& g,
                          const FiniteGroupoid& h, const std::vector<Id>& phi, std::uint32_t seed) {
  for (const GroupCocycle& gc : group_cocycles(h, seed)) {
    Cocycle c = Cocycle::from_exponents(g, gc.modulus, [&](Id x, Id y) {
      return gc.exponent(phi[static_cast<std::size_t>(x)], phi[static_cast<std::size_t>(y)]);
    });
    out.push_back({name + "/" + gc.name, c});
  }
}

// Bundle of groups a and b, with the homomorphism onto a x b (id x + |a| y).
inline std::pair<FiniteGroupoid, std::vector<Id>> bundle_with_projection(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  std::vector<Id> relabel;
  FiniteGroupoid u = disjoint_union(a, b, &relabel);
  std::vector<Id> phi(u.size());
  const std::size_t na = a.size();
  for (std::size_t x = 0; x < na; ++x) phi[static_cast<std::size_t>(relabel[x])] = static_cast<Id>(x);
  for (std::size_t y = 0; y < b.size(); ++y) phi[static_cast<std::size_t>(relabel[na + y])] = static_cast<Id>(na * y);
  return {u, phi};
}

inline const std::vector<CatalogInstance>& catalog_instances() {
  static const std::vector<CatalogInstance> instances = [] {
    std::vector<CatalogInstance> out;
    std::uint32_t seed = 20240;
    for (const auto& ng : small_groups()) {
      std::vector<Id> id(ng.group.size());
      for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Id>(i);
      add_pullbacks(out, ng.name, ng.group, ng.group, id, seed++);
    }
    const std::vector<std::pair<std::string, std::string>> bundles{
        {"C2", "C3"}, {"C2", "C2"}, {"C4", "C2xC2"}, {"S3", "C2"}, {"C2xC2", "C2xC2"}, {"Q8", "C4"}, {"D4", "C2xC2"}, {"C3", "S3"}};
    for (const auto& [an, bn] : bundles) {
      const FiniteGroupoid& a = group_named(an);
      const FiniteGroupoid& b = group_named(bn);
      auto [u, phi] = bundle_with_projection(a, b);
      add_pullbacks(out, an + "+" + bn, u, direct_product(a, b), phi, seed++);
    }
    struct ActionSpec {
      std::string group;
      std::size_t points;
      std::function<Id(const FiniteGroupoid&, Id, Id)> act;
    };
    // Actions through a surjection onto Z/k.
    auto through_quotient = [](std::int64_t k) {
      return [k](const FiniteGroupoid& h, Id g, Id x) {
        for (const auto& v : homomorphisms_to_cyclic(h, k))
          for (auto e : v)
            if (std::gcd(e, k) == 1) return static_cast<Id>((x + v[static_cast<std::size_t>(g)]) % k);
        throw std::logic_error("no surjection onto Z/k");
      };
    };
    const std::vector<ActionSpec> actions{
        {"C2xC2", 2, through_quotient(2)}, {"C4", 2, through_quotient(2)},   {"Q8", 2, through_quotient(2)},
        {"D4", 2, through_quotient(2)},    {"C4xC2", 2, through_quotient(2)}, {"S3", 2, through_quotient(2)},
        {"C6", 3, through_quotient(3)},    {"C3", 3, through_quotient(3)},    {"D6", 2, through_quotient(2)},
        {"S3", 3, [](const FiniteGroupoid& h, Id g, Id x) {
           // S3 as dihedral symmetries of a triangle: element a^i b^j sends x to (-1)^j x + i.
           (void)h;
           const int i = g % 3, j = g / 3;
           return static_cast<Id>(floor_mod((j ? -x : x) + i, 3));
         }},
    };
    for (const auto& spec : actions) {
      const FiniteGroupoid& h = group_named(spec.group);
      std::vector<std::vector<Id>> table(h.size(), std::vector<Id>(spec.points));
      // Tabulated once; the quotient actions search for a surjection on every call.
      for (Id g = 0; g < static_cast<Id>(h.size()); ++g)
        for (Id x = 0; x < static_cast<Id>(spec.points); ++x) table[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)] = spec.act(h, g, x);
      const ActionGroupoid a = transformation_groupoid(h, spec.points, [&](Id g, Id x) { return table[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)]; });
      std::vector<Id> phi(a.arrow_count());
      for (Id e = 0; e < static_cast<Id>(a.arrow_count()); ++e) phi[static_cast<std::size_t>(e)] = a.arrow(e).h;
      add_pullbacks(out, spec.group + "@" + std::to_string(spec.points), a.groupoid(), h, phi, seed++);
    }
    // Pair groupoids times groups, mapped onto the group factor.
    for (const auto& [k, gn] : std::vector<std::pair<std::size_t, std::string>>{{2, "C2"}, {2, "C4"}, {3, "C2"}, {2, "C2xC2"}, {2, "S3"}}) {
      const FiniteGroupoid p = pair_groupoid(k);
      const FiniteGroupoid& h = group_named(gn);
      std::vector<Id> relabel;
      const FiniteGroupoid g = direct_product(p, h, &relabel);
      std::vector<Id> phi(g.size());
      for (std::size_t raw = 0; raw < g.size(); ++raw) phi[static_cast<std::size_t>(relabel[raw])] = static_cast<Id>(raw / p.size());
      add_pullbacks(out, "Pair" + std::to_string(k) + "x" + gn, g, h, phi, seed++);
    }
    return out;
  }();
  return instances;
}

struct CatalogPair {
  const CatalogInstance* instance = nullptr;
  Subgroupoid sub;
  std::string name() const {
    std::string m;
    for (Id x : sub.members()) m += (m.empty() ? "" : ",") + std::to_string(x);
    return instance->name + "{" + m + "}";
  }
};

inline const std::vector<CatalogPair>& catalog_pairs() {
  static const std::vector<CatalogPair> pairs = [] {
    std::vector<CatalogPair> out;
    for (const auto& inst : catalog_instances())
      for (const Subgroupoid& s : wide_normal_subgroupoids(inst.groupoid()))
        if (is_abelian_twist(inst.cocycle, s)) out.push_back({&inst, s});
    return out;
  }();
  return pairs;
}

}  // namespace cartan::fixtures
