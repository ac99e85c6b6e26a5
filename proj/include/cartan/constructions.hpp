#pragma once

// Builders for common finite groupoids, action groupoids and subgroup lattices.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "cartan/groupoid.hpp"
#include "cartan/root_of_unity.hpp"

namespace cartan {

// One-unit groupoid from a multiplication table on 0..n-1; the identity is detected.
inline FiniteGroupoid group_from_table(std::size_t n, const std::function<Id(Id, Id)>& mul) {
  Id identity = kNone;
  for (Id e = 0; e < static_cast<Id>(n) && identity == kNone; ++e) {
    bool ok = true;
    for (Id x = 0; x < static_cast<Id>(n) && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) identity = e;
  }
  if (identity == kNone) fail(ErrorCode::BadUnit, "table has no identity");
  RawGroupoid raw;
  raw.element_count = n;
  raw.units = {identity};
  raw.range.assign(n, identity);
  raw.source.assign(n, identity);
  raw.compose.resize(n * n);
  for (Id x = 0; x < static_cast<Id>(n); ++x)
    for (Id y = 0; y < static_cast<Id>(n); ++y) raw.compose[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] = mul(x, y);
  return validate_groupoid(raw);
}

inline FiniteGroupoid cyclic_group(std::size_t n) {
  return group_from_table(n, [n](Id a, Id b) { return static_cast<Id>((static_cast<std::size_t>(a + b)) % n); });
}

// Group <a, b | a^n, b^m = a^t, b a b^-1 = a^r>; element a^i b^j has id i + n j.
// Requires r^m = 1 and t r = t modulo n.
inline FiniteGroupoid metacyclic_group(std::int64_t n, std::int64_t m, std::int64_t r, std::int64_t t) {
  std::vector<std::int64_t> rpow(static_cast<std::size_t>(m), 1);
  for (std::int64_t j = 1; j < m; ++j) rpow[static_cast<std::size_t>(j)] = floor_mod(rpow[static_cast<std::size_t>(j - 1)] * r, n);
  return group_from_table(static_cast<std::size_t>(n * m), [=](Id x, Id y) {
    std::int64_t i = x % n, j = x / n, k = y % n, l = y / n;
    std::int64_t a = i + k * rpow[static_cast<std::size_t>(j)];
    std::int64_t b = j + l;
    if (b >= m) {
      a += t;
      b -= m;
    }
    return static_cast<Id>(floor_mod(a, n) + n * b);
  });
}

inline FiniteGroupoid dihedral_group(std::int64_t n) { return metacyclic_group(n, 2, -1, 0); }
// Dicyclic group of order 4k (quaternion group for k = 2).
inline FiniteGroupoid dicyclic_group(std::int64_t k) { return metacyclic_group(2 * k, 2, -1, k); }

// Pairs (a, b), raw id a + |A| b before units are moved first.
inline FiniteGroupoid direct_product(const FiniteGroupoid& a, const FiniteGroupoid& b, std::vector<Id>* relabel = nullptr) {
  const std::size_t na = a.size(), nb = b.size(), n = na * nb;
  auto id = [na](Id x, Id y) { return static_cast<Id>(static_cast<std::size_t>(x) + na * static_cast<std::size_t>(y)); };
  RawGroupoid raw;
  raw.element_count = n;
  for (Id v = 0; v < static_cast<Id>(b.unit_count()); ++v)
    for (Id u = 0; u < static_cast<Id>(a.unit_count()); ++u) raw.units.push_back(id(u, v));
  raw.range.resize(n);
  raw.source.resize(n);
  raw.compose.assign(n * n, kNone);
  for (Id y = 0; y < static_cast<Id>(nb); ++y)
    for (Id x = 0; x < static_cast<Id>(na); ++x) {
      std::size_t g = static_cast<std::size_t>(id(x, y));
      raw.range[g] = id(a.range(x), b.range(y));
      raw.source[g] = id(a.source(x), b.source(y));
      for (Id y2 = 0; y2 < static_cast<Id>(nb); ++y2)
        for (Id x2 = 0; x2 < static_cast<Id>(na); ++x2)
          if (a.composable(x, x2) && b.composable(y, y2))
            raw.compose[g * n + static_cast<std::size_t>(id(x2, y2))] = id(a.compose(x, x2), b.compose(y, y2));
    }
  return validate_groupoid(raw, relabel);
}

// Elements of a keep their ids, elements of b are shifted by |a|, then units are moved first.
inline FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b, std::vector<Id>* relabel = nullptr) {
  const std::size_t na = a.size(), n = na + b.size();
  RawGroupoid raw;
  raw.element_count = n;
  raw.range.resize(n);
  raw.source.resize(n);
  raw.compose.assign(n * n, kNone);
  for (Id u : a.units()) raw.units.push_back(u);
  for (Id u : b.units()) raw.units.push_back(u + static_cast<Id>(na));
  for (Id x = 0; x < static_cast<Id>(na); ++x) {
    raw.range[static_cast<std::size_t>(x)] = a.range(x);
    raw.source[static_cast<std::size_t>(x)] = a.source(x);
    for (Id y = 0; y < static_cast<Id>(na); ++y)
      if (a.composable(x, y)) raw.compose[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] = a.compose(x, y);
  }
  const Id off = static_cast<Id>(na);
  for (Id x = 0; x < static_cast<Id>(b.size()); ++x) {
    raw.range[static_cast<std::size_t>(x + off)] = b.range(x) + off;
    raw.source[static_cast<std::size_t>(x + off)] = b.source(x) + off;
    for (Id y = 0; y < static_cast<Id>(b.size()); ++y)
      if (b.composable(x, y))
        raw.compose[static_cast<std::size_t>(x + off) * n + static_cast<std::size_t>(y + off)] = b.compose(x, y) + off;
  }
  return validate_groupoid(raw, relabel);
}

// Pair groupoid on k points: (i, j) with r = i, s = j, id i + k j.
inline FiniteGroupoid pair_groupoid(std::size_t k) {
  const std::size_t n = k * k;
  RawGroupoid raw;
  raw.element_count = n;
  raw.range.resize(n);
  raw.source.resize(n);
  raw.compose.assign(n * n, kNone);
  for (std::size_t i = 0; i < k; ++i) raw.units.push_back(static_cast<Id>(i + k * i));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t g = i + k * j;
      raw.range[g] = static_cast<Id>(i + k * i);
      raw.source[g] = static_cast<Id>(j + k * j);
      for (std::size_t l = 0; l < k; ++l) raw.compose[g * n + (j + k * l)] = static_cast<Id>(i + k * l);
    }
  return validate_groupoid(raw);
}

// Closure of a generating set under an associative product on values of type T.
template <class T, class Mul>
FiniteGroupoid group_from_generators(const T& identity, const std::vector<T>& generators, Mul mul,
                                     std::vector<T>* elements_out = nullptr) {
  std::vector<T> elems{identity};
  std::map<T, Id> index{{identity, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const T& g : generators) {
      T x = mul(elems[i], g);
      if (index.emplace(x, static_cast<Id>(elems.size())).second) elems.push_back(x);
    }
  const std::size_t n = elems.size();
  std::vector<Id> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = index.at(mul(elems[i], elems[j]));
  if (elements_out) *elements_out = elems;
  return group_from_table(n, [&](Id x, Id y) { return table[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)]; });
}

// Groupoid H acting on points 0..P-1 with momentum P(x) a unit of H; act(h, x) is defined when s(h) = P(x).
class ActionGroupoid {
 public:
  struct Arrow {
    Id h;
    Id x;
  };

  static ActionGroupoid build(const FiniteGroupoid& acting, std::vector<Id> momentum,
                              const std::function<Id(Id, Id)>& action) {
    ActionGroupoid a;
    a.acting_ = acting;
    a.momentum_ = std::move(momentum);
    const std::size_t points = a.momentum_.size();
    a.table_.assign(acting.size() * points, kNone);
    for (Id h = 0; h < static_cast<Id>(acting.size()); ++h)
      for (Id x = 0; x < static_cast<Id>(points); ++x)
        if (acting.source(h) == a.momentum_[static_cast<std::size_t>(x)]) {
          Id y = action(h, x);
          if (y < 0 || static_cast<std::size_t>(y) >= points || a.momentum_[static_cast<std::size_t>(y)] != acting.range(h))
            fail(ErrorCode::DomainMismatch, "action does not respect the momentum map");
          a.table_[static_cast<std::size_t>(h) * points + static_cast<std::size_t>(x)] = y;
        }
    // Arrow ids: unit arrows (P(x), x) first in point order, then the rest.
    a.arrow_id_.assign(acting.size() * points, kNone);
    for (Id x = 0; x < static_cast<Id>(points); ++x) a.add_arrow(a.momentum_[static_cast<std::size_t>(x)], x);
    for (Id h = 0; h < static_cast<Id>(acting.size()); ++h)
      for (Id x = 0; x < static_cast<Id>(points); ++x)
        if (!acting.is_unit(h) && a.act(h, x) != kNone) a.add_arrow(h, x);

    const std::size_t n = a.arrows_.size();
    RawGroupoid raw;
    raw.element_count = n;
    raw.units = {};
    for (Id x = 0; x < static_cast<Id>(points); ++x) raw.units.push_back(x);
    raw.range.resize(n);
    raw.source.resize(n);
    raw.compose.assign(n * n, kNone);
    for (std::size_t i = 0; i < n; ++i) {
      auto [h, x] = a.arrows_[i];
      raw.range[i] = a.act(h, x);
      raw.source[i] = x;
      for (std::size_t j = 0; j < n; ++j) {
        auto [h2, x2] = a.arrows_[j];
        if (a.act(h2, x2) == x) raw.compose[i * n + j] = a.arrow_id(acting.compose(h, h2), x2);
      }
    }
    std::vector<Id> relabel;
    a.groupoid_ = validate_groupoid(raw, &relabel);
    for (std::size_t i = 0; i < n; ++i)
      if (relabel[i] != static_cast<Id>(i)) fail(ErrorCode::DomainMismatch, "action groupoid relabelled unexpectedly");
    return a;
  }

  const FiniteGroupoid& acting() const { return acting_; }
  std::size_t point_count() const { return momentum_.size(); }
  Id momentum(Id x) const { return momentum_[static_cast<std::size_t>(x)]; }
  Id act(Id h, Id x) const { return table_[static_cast<std::size_t>(h) * momentum_.size() + static_cast<std::size_t>(x)]; }
  std::size_t arrow_count() const { return arrows_.size(); }
  Arrow arrow(Id a) const { return arrows_[static_cast<std::size_t>(a)]; }
  Id arrow_id(Id h, Id x) const { return arrow_id_[static_cast<std::size_t>(h) * momentum_.size() + static_cast<std::size_t>(x)]; }
  // The action groupoid itself; unit arrow of point x has id x.
  const FiniteGroupoid& groupoid() const { return groupoid_; }

 private:
  void add_arrow(Id h, Id x) {
    arrow_id_[static_cast<std::size_t>(h) * momentum_.size() + static_cast<std::size_t>(x)] = static_cast<Id>(arrows_.size());
    arrows_.push_back({h, x});
  }

  FiniteGroupoid acting_;
  std::vector<Id> momentum_;
  std::vector<Id> table_;
  std::vector<Arrow> arrows_;
  std::vector<Id> arrow_id_;
  FiniteGroupoid groupoid_;
};

// Transformation groupoid of a group H acting on k points; perm(h) lists the images of 0..k-1.
inline ActionGroupoid transformation_groupoid(const FiniteGroupoid& h, std::size_t points,
                                              const std::function<Id(Id, Id)>& action) {
  return ActionGroupoid::build(h, std::vector<Id>(points, 0), action);
}

// Subgroup of the isotropy group G(u) generated by the given elements.
inline std::vector<Id> generated_subgroup(const FiniteGroupoid& g, Id u, const std::vector<Id>& gens) {
  std::vector<char> in(g.size(), 0);
  std::vector<Id> elems{u};
  in[static_cast<std::size_t>(u)] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Id x : gens) {
      if (g.range(x) != u || g.source(x) != u) fail(ErrorCode::FiberMismatch, "generator outside the isotropy group");
      Id y = g.compose(elems[i], x);
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = 1;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// All subgroups of G(u), each sorted, in order of discovery by size.
inline std::vector<std::vector<Id>> subgroups_at(const FiniteGroupoid& g, Id u) {
  std::vector<Id> iso = g.isotropy_group(u);
  std::set<std::vector<Id>> seen;
  std::vector<std::vector<Id>> out{{u}};
  seen.insert(out[0]);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Id x : iso) {
      if (std::binary_search(out[i].begin(), out[i].end(), x)) continue;
      std::vector<Id> gens = out[i];
      gens.push_back(x);
      auto h = generated_subgroup(g, u, gens);
      if (seen.insert(h).second) out.push_back(std::move(h));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

inline bool is_normal_in_isotropy(const FiniteGroupoid& g, Id u, const std::vector<Id>& h) {
  for (Id x : g.isotropy_group(u))
    for (Id t : h)
      if (!std::binary_search(h.begin(), h.end(), g.compose(g.compose(x, t), g.inverse(x)))) return false;
  return true;
}

// Every wide normal subgroupoid of G contained in Iso(G). Fibers along an orbit are conjugate,
// so each is determined by a normal subgroup of the isotropy group at the orbit's least unit.
inline std::vector<Subgroupoid> wide_normal_subgroupoids(const FiniteGroupoid& g, std::size_t limit = 4096) {
  const std::size_t units = g.unit_count();
  std::vector<Id> base(units, kNone);
  std::vector<Id> arrow_from_base(units, kNone);
  std::vector<Id> bases;
  for (Id u = 0; u < static_cast<Id>(units); ++u) {
    if (base[static_cast<std::size_t>(u)] != kNone) continue;
    bases.push_back(u);
    for (Id x = 0; x < static_cast<Id>(g.size()); ++x)
      if (g.source(x) == u && base[static_cast<std::size_t>(g.range(x))] == kNone) {
        base[static_cast<std::size_t>(g.range(x))] = u;
        arrow_from_base[static_cast<std::size_t>(g.range(x))] = x;
      }
  }
  std::vector<std::vector<std::vector<Id>>> choices;
  for (Id u : bases) {
    std::vector<std::vector<Id>> normal;
    for (auto& h : subgroups_at(g, u))
      if (is_normal_in_isotropy(g, u, h)) normal.push_back(h);
    choices.push_back(std::move(normal));
  }
  std::vector<Subgroupoid> out;
  std::vector<std::size_t> pick(bases.size(), 0);
  while (out.size() < limit) {
    std::vector<Id> members;
    for (Id v = 0; v < static_cast<Id>(units); ++v) {
      std::size_t orbit = static_cast<std::size_t>(std::find(bases.begin(), bases.end(), base[static_cast<std::size_t>(v)]) - bases.begin());
      Id x = arrow_from_base[static_cast<std::size_t>(v)];
      for (Id t : choices[orbit][pick[orbit]]) members.push_back(g.compose(g.compose(x, t), g.inverse(x)));
    }
    out.push_back(Subgroupoid::make(g, members));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

}  // namespace cartan
