#pragma once

// Finite groupoids as validated lookup tables.
//
// Composition convention: gh is defined iff s(g) == r(h), with r(gh) = r(g) and s(gh) = s(h).
// After validation the units occupy ids 0 .. unit_count()-1.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cartan/errors.hpp"

namespace cartan {

using Id = std::int32_t;
inline constexpr Id kNone = -1;

// Unvalidated tables. compose is dense, row-major, kNone where undefined.
struct RawGroupoid {
  std::size_t element_count = 0;
  std::vector<Id> units;
  std::vector<Id> range;
  std::vector<Id> source;
  std::vector<Id> compose;
};

class FiniteGroupoid {
 public:
  FiniteGroupoid() : t_(std::make_shared<Tables>()) {}

  std::size_t size() const { return t_->n; }
  std::size_t unit_count() const { return t_->units; }
  bool is_unit(Id g) const { return g >= 0 && static_cast<std::size_t>(g) < t_->units; }
  Id range(Id g) const { return t_->range[idx(g)]; }
  Id source(Id g) const { return t_->source[idx(g)]; }
  Id inverse(Id g) const { return t_->inverse[idx(g)]; }
  bool composable(Id g, Id h) const { return source(g) == range(h); }
  Id compose(Id g, Id h) const { return t_->compose[idx(g) * t_->n + idx(h)]; }
  bool in_isotropy(Id g) const { return range(g) == source(g); }

  std::vector<Id> elements() const {
    std::vector<Id> out(t_->n);
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  std::vector<Id> units() const {
    std::vector<Id> out(t_->units);
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  // Elements g with r(g) = s(g) = u, ascending.
  std::vector<Id> isotropy_group(Id u) const {
    std::vector<Id> out;
    for (std::size_t g = 0; g < t_->n; ++g)
      if (t_->range[g] == u && t_->source[g] == u) out.push_back(static_cast<Id>(g));
    return out;
  }

  RawGroupoid raw() const {
    RawGroupoid r;
    r.element_count = t_->n;
    r.units = units();
    r.range = t_->range;
    r.source = t_->source;
    r.compose = t_->compose;
    return r;
  }

  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    if (a.t_ == b.t_) return true;
    return a.t_->n == b.t_->n && a.t_->units == b.t_->units && a.t_->range == b.t_->range &&
           a.t_->source == b.t_->source && a.t_->compose == b.t_->compose;
  }

  friend FiniteGroupoid validate_groupoid(const RawGroupoid& raw, std::vector<Id>* relabel);

 private:
  struct Tables {
    std::size_t n = 0;
    std::size_t units = 0;
    std::vector<Id> range, source, inverse, compose;
  };
  static std::size_t idx(Id g) { return static_cast<std::size_t>(g); }

  std::shared_ptr<const Tables> t_;
};

// Checks the groupoid axioms in order (index consistency, units, domains, associativity, inverses)
// and reports the first violation. The result is relabelled so that units come first;
// relabel[old] = new when requested.
inline FiniteGroupoid validate_groupoid(const RawGroupoid& raw, std::vector<Id>* relabel = nullptr) {
  const std::size_t n = raw.element_count;
  auto in_range = [n](Id g) { return g >= 0 && static_cast<std::size_t>(g) < n; };
  if (n == 0) fail(ErrorCode::DomainMismatch, "groupoid has no elements");
  if (raw.range.size() != n || raw.source.size() != n || raw.compose.size() != n * n)
    fail(ErrorCode::DomainMismatch, "table sizes do not match element count");
  if (raw.units.empty()) fail(ErrorCode::BadUnit, "no units declared");

  std::vector<char> is_unit(n, 0);
  for (Id u : raw.units) {
    if (!in_range(u)) fail(ErrorCode::DomainMismatch, "unit id out of range");
    if (is_unit[static_cast<std::size_t>(u)]) fail(ErrorCode::BadUnit, "unit listed twice: " + std::to_string(u));
    is_unit[static_cast<std::size_t>(u)] = 1;
  }
  for (std::size_t g = 0; g < n; ++g) {
    Id r = raw.range[g], s = raw.source[g];
    if (!in_range(r) || !in_range(s) || !is_unit[static_cast<std::size_t>(r)] || !is_unit[static_cast<std::size_t>(s)])
      fail(ErrorCode::DomainMismatch, "range/source of " + std::to_string(g) + " is not a unit");
  }
  for (std::size_t i = 0; i < n * n; ++i)
    if (raw.compose[i] != kNone && !in_range(raw.compose[i]))
      fail(ErrorCode::DomainMismatch, "composition value out of range");

  auto mul = [&](Id g, Id h) { return raw.compose[static_cast<std::size_t>(g) * n + static_cast<std::size_t>(h)]; };
  auto rg = [&](Id g) { return raw.range[static_cast<std::size_t>(g)]; };
  auto sg = [&](Id g) { return raw.source[static_cast<std::size_t>(g)]; };

  for (Id u : raw.units) {
    if (rg(u) != u || sg(u) != u) fail(ErrorCode::BadUnit, "unit " + std::to_string(u) + " is not its own range/source");
    for (Id g = 0; g < static_cast<Id>(n); ++g) {
      if (rg(g) == u && mul(u, g) != g) fail(ErrorCode::BadUnit, "unit " + std::to_string(u) + " is not a left identity");
      if (sg(g) == u && mul(g, u) != g) fail(ErrorCode::BadUnit, "unit " + std::to_string(u) + " is not a right identity");
    }
  }
  for (Id g = 0; g < static_cast<Id>(n); ++g) {
    for (Id h = 0; h < static_cast<Id>(n); ++h) {
      Id gh = mul(g, h);
      bool should = sg(g) == rg(h);
      if (should != (gh != kNone))
        fail(ErrorCode::DomainMismatch, "composition of " + std::to_string(g) + "," + std::to_string(h) +
                                            (should ? " missing" : " defined for non-composable pair"));
      if (gh != kNone && (rg(gh) != rg(g) || sg(gh) != sg(h)))
        fail(ErrorCode::DomainMismatch, "range/source of product " + std::to_string(g) + "," + std::to_string(h));
    }
  }
  for (Id g = 0; g < static_cast<Id>(n); ++g)
    for (Id h = 0; h < static_cast<Id>(n); ++h) {
      Id gh = mul(g, h);
      if (gh == kNone) continue;
      for (Id k = 0; k < static_cast<Id>(n); ++k) {
        if (sg(h) != rg(k)) continue;
        if (mul(gh, k) != mul(g, mul(h, k)))
          fail(ErrorCode::NonAssociative,
               "(" + std::to_string(g) + "," + std::to_string(h) + "," + std::to_string(k) + ")");
      }
    }
  std::vector<Id> inv(n, kNone);
  for (Id g = 0; g < static_cast<Id>(n); ++g) {
    for (Id h = 0; h < static_cast<Id>(n); ++h)
      if (sg(g) == rg(h) && mul(g, h) == rg(g) && mul(h, g) == sg(g)) {
        inv[static_cast<std::size_t>(g)] = h;
        break;
      }
    if (inv[static_cast<std::size_t>(g)] == kNone) fail(ErrorCode::BadInverse, "no inverse for " + std::to_string(g));
  }

  // Units first (in ascending old id), then the rest.
  std::vector<Id> order;
  for (Id g = 0; g < static_cast<Id>(n); ++g)
    if (is_unit[static_cast<std::size_t>(g)]) order.push_back(g);
  for (Id g = 0; g < static_cast<Id>(n); ++g)
    if (!is_unit[static_cast<std::size_t>(g)]) order.push_back(g);
  std::vector<Id> map(n);
  for (std::size_t i = 0; i < n; ++i) map[static_cast<std::size_t>(order[i])] = static_cast<Id>(i);

  auto t = std::make_shared<FiniteGroupoid::Tables>();
  t->n = n;
  t->units = raw.units.size();
  t->range.resize(n);
  t->source.resize(n);
  t->inverse.resize(n);
  t->compose.assign(n * n, kNone);
  for (std::size_t old = 0; old < n; ++old) {
    std::size_t g = static_cast<std::size_t>(map[old]);
    t->range[g] = map[static_cast<std::size_t>(raw.range[old])];
    t->source[g] = map[static_cast<std::size_t>(raw.source[old])];
    t->inverse[g] = map[static_cast<std::size_t>(inv[old])];
    for (std::size_t oh = 0; oh < n; ++oh) {
      Id v = raw.compose[old * n + oh];
      if (v != kNone) t->compose[g * n + static_cast<std::size_t>(map[oh])] = map[static_cast<std::size_t>(v)];
    }
  }
  if (relabel) *relabel = map;
  FiniteGroupoid out;
  out.t_ = std::move(t);
  return out;
}

class Subgroupoid {
 public:
  Subgroupoid() = default;

  // Validates closure under composition and inversion.
  static Subgroupoid make(const FiniteGroupoid& g, std::vector<Id> members) {
    Subgroupoid s;
    s.parent_ = g;
    s.mask_.assign(g.size(), 0);
    for (Id x : members) {
      if (x < 0 || static_cast<std::size_t>(x) >= g.size()) fail(ErrorCode::NotSubgroupoid, "member out of range");
      s.mask_[static_cast<std::size_t>(x)] = 1;
    }
    for (Id x = 0; x < static_cast<Id>(g.size()); ++x) {
      if (!s.contains(x)) continue;
      if (!s.contains(g.inverse(x))) fail(ErrorCode::NotSubgroupoid, "not closed under inverse at " + std::to_string(x));
      for (Id y = 0; y < static_cast<Id>(g.size()); ++y)
        if (s.contains(y) && g.composable(x, y) && !s.contains(g.compose(x, y)))
          fail(ErrorCode::NotSubgroupoid, "not closed under composition at " + std::to_string(x) + "," + std::to_string(y));
    }
    s.finish();
    return s;
  }
  static Subgroupoid units_of(const FiniteGroupoid& g) { return make(g, g.units()); }
  static Subgroupoid whole(const FiniteGroupoid& g) { return make(g, g.elements()); }

  const FiniteGroupoid& parent() const { return parent_; }
  bool contains(Id g) const { return mask_[static_cast<std::size_t>(g)] != 0; }
  const std::vector<Id>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  // Members with r = s = u, ascending.
  const std::vector<Id>& fiber(Id u) const { return fibers_[static_cast<std::size_t>(u)]; }

  friend bool operator==(const Subgroupoid& a, const Subgroupoid& b) {
    return a.parent_ == b.parent_ && a.mask_ == b.mask_;
  }

 private:
  void finish() {
    members_.clear();
    fibers_.assign(parent_.unit_count(), {});
    for (Id x = 0; x < static_cast<Id>(parent_.size()); ++x) {
      if (!contains(x)) continue;
      members_.push_back(x);
      if (parent_.in_isotropy(x)) fibers_[static_cast<std::size_t>(parent_.range(x))].push_back(x);
    }
  }

  FiniteGroupoid parent_;
  std::vector<char> mask_;
  std::vector<Id> members_;
  std::vector<std::vector<Id>> fibers_;
};

inline Subgroupoid isotropy(const FiniteGroupoid& g) {
  std::vector<Id> members;
  for (Id x = 0; x < static_cast<Id>(g.size()); ++x)
    if (g.in_isotropy(x)) members.push_back(x);
  return Subgroupoid::make(g, std::move(members));
}

struct NormalityReport {
  bool wide = false;
  bool in_isotropy = false;
  bool normal = false;
};

inline NormalityReport is_wide_normal(const Subgroupoid& s) {
  const FiniteGroupoid& g = s.parent();
  NormalityReport rep;
  rep.wide = true;
  for (Id u = 0; u < static_cast<Id>(g.unit_count()); ++u)
    if (!s.contains(u)) rep.wide = false;
  rep.in_isotropy = std::all_of(s.members().begin(), s.members().end(), [&](Id x) { return g.in_isotropy(x); });
  rep.normal = rep.in_isotropy;
  for (Id x = 0; rep.normal && x < static_cast<Id>(g.size()); ++x) {
    std::vector<Id> conj;
    for (Id t : s.fiber(g.source(x))) conj.push_back(g.compose(g.compose(x, t), g.inverse(x)));
    std::sort(conj.begin(), conj.end());
    if (conj != s.fiber(g.range(x))) rep.normal = false;
  }
  return rep;
}

inline bool is_principal(const FiniteGroupoid& g) {
  for (Id x = 0; x < static_cast<Id>(g.size()); ++x)
    if (g.in_isotropy(x) && !g.is_unit(x)) return false;
  return true;
}

struct EffectiveReport {
  bool effective = false;
  // For discrete groupoids the interior of the isotropy is the isotropy itself.
  bool interior_is_set = true;
};

inline EffectiveReport is_effective_finite(const FiniteGroupoid& g) { return {is_principal(g), true}; }

struct Quotient {
  FiniteGroupoid groupoid;
  std::vector<Id> projection;      // element of G -> coset id
  std::vector<Id> representative;  // coset id -> minimal element of the coset
};

// G/S for a wide normal S. Cosets gS are keyed by their minimal element.
inline Quotient quotient(const Subgroupoid& s) {
  const FiniteGroupoid& g = s.parent();
  NormalityReport rep = is_wide_normal(s);
  if (!rep.wide) fail(ErrorCode::PreconditionFailed, "subgroupoid is not wide");
  if (!rep.normal) fail(ErrorCode::NotNormal, "subgroupoid is not normal");

  const std::size_t n = g.size();
  std::vector<Id> rep_of(n, kNone);
  for (Id x = 0; x < static_cast<Id>(n); ++x) {
    Id m = x;
    for (Id t : s.fiber(g.source(x))) m = std::min(m, g.compose(x, t));
    rep_of[static_cast<std::size_t>(x)] = m;
  }
  // Units first: the coset of a unit u is S(u) whose minimum is u itself.
  std::vector<Id> reps;
  for (Id x = 0; x < static_cast<Id>(n); ++x)
    if (rep_of[static_cast<std::size_t>(x)] == x) reps.push_back(x);
  std::vector<Id> coset_of_rep(n, kNone);
  for (std::size_t i = 0; i < reps.size(); ++i) coset_of_rep[static_cast<std::size_t>(reps[i])] = static_cast<Id>(i);

  Quotient q;
  q.representative = reps;
  q.projection.resize(n);
  for (Id x = 0; x < static_cast<Id>(n); ++x)
    q.projection[static_cast<std::size_t>(x)] = coset_of_rep[static_cast<std::size_t>(rep_of[static_cast<std::size_t>(x)])];

  const std::size_t m = reps.size();
  RawGroupoid raw;
  raw.element_count = m;
  raw.units = g.units();
  raw.range.resize(m);
  raw.source.resize(m);
  raw.compose.assign(m * m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    raw.range[i] = q.projection[static_cast<std::size_t>(g.range(reps[i]))];
    raw.source[i] = q.projection[static_cast<std::size_t>(g.source(reps[i]))];
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (g.composable(reps[i], reps[j]))
        raw.compose[i * m + j] = q.projection[static_cast<std::size_t>(g.compose(reps[i], reps[j]))];
  std::vector<Id> relabel;
  q.groupoid = validate_groupoid(raw, &relabel);
  for (std::size_t i = 0; i < m; ++i)
    if (relabel[i] != static_cast<Id>(i)) fail(ErrorCode::DomainMismatch, "quotient relabelled unexpectedly");
  return q;
}

}  // namespace cartan
