#pragma once

// Twists E = T x_c G with phases in roots of unity.

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "cartan/abelian.hpp"
#include "cartan/groupoid.hpp"
#include "cartan/root_of_unity.hpp"

namespace cartan {

// Normalized 2-cocycle with values in mu_M.
class Cocycle {
 public:
  Cocycle() = default;

  static Cocycle trivial(const FiniteGroupoid& g) {
    Cocycle c;
    c.groupoid_ = g;
    c.modulus_ = 1;
    c.table_.assign(g.size() * g.size(), RootOfUnity::one());
    return c;
  }

  // exponent(g, h) is read modulo M on composable pairs only.
  static Cocycle from_exponents(const FiniteGroupoid& g, std::int64_t modulus,
                                const std::function<std::int64_t(Id, Id)>& exponent) {
    Cocycle c = trivial(g);
    c.modulus_ = modulus;
    for (Id x = 0; x < static_cast<Id>(g.size()); ++x)
      for (Id y = 0; y < static_cast<Id>(g.size()); ++y)
        if (g.composable(x, y)) c.at(x, y) = RootOfUnity::from_exponent(exponent(x, y), modulus);
    c.validate();
    return c;
  }

  static Cocycle from_values(const FiniteGroupoid& g, const std::function<RootOfUnity(Id, Id)>& value) {
    Cocycle c = trivial(g);
    std::int64_t m = 1;
    for (Id x = 0; x < static_cast<Id>(g.size()); ++x)
      for (Id y = 0; y < static_cast<Id>(g.size()); ++y)
        if (g.composable(x, y)) {
          c.at(x, y) = value(x, y);
          m = std::lcm(m, c.at(x, y).modulus());
        }
    c.modulus_ = m;
    c.validate();
    return c;
  }

  const FiniteGroupoid& groupoid() const { return groupoid_; }
  std::int64_t modulus() const { return modulus_; }
  RootOfUnity operator()(Id g, Id h) const { return table_[static_cast<std::size_t>(g) * groupoid_.size() + static_cast<std::size_t>(h)]; }
  bool is_trivial() const {
    return std::all_of(table_.begin(), table_.end(), [](const RootOfUnity& z) { return z.is_one(); });
  }

  friend bool operator==(const Cocycle& a, const Cocycle& b) {
    return a.groupoid_ == b.groupoid_ && a.modulus_ == b.modulus_ && a.table_ == b.table_;
  }

 private:
  RootOfUnity& at(Id g, Id h) { return table_[static_cast<std::size_t>(g) * groupoid_.size() + static_cast<std::size_t>(h)]; }

  void validate() const {
    const FiniteGroupoid& g = groupoid_;
    const Id n = static_cast<Id>(g.size());
    for (Id x = 0; x < n; ++x) {
      const RootOfUnity a = (*this)(x, g.source(x)), b = (*this)(g.range(x), x);
      if (!a.is_one() || !b.is_one()) fail(ErrorCode::NotCocycle, "not normalized at " + std::to_string(x));
      for (Id y = 0; y < n; ++y)
        if (g.composable(x, y) && modulus_ % (*this)(x, y).modulus() != 0)
          fail(ErrorCode::NotCocycle, "value outside mu_M");
    }
    for (Id x = 0; x < n; ++x)
      for (Id y = 0; y < n; ++y) {
        if (!g.composable(x, y)) continue;
        const Id xy = g.compose(x, y);
        for (Id z = 0; z < n; ++z) {
          if (!g.composable(y, z)) continue;
          if ((*this)(x, y) * (*this)(xy, z) != (*this)(x, g.compose(y, z)) * (*this)(y, z))
            fail(ErrorCode::NotCocycle, "cocycle identity fails at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                                            std::to_string(z) + ")");
        }
      }
  }

  FiniteGroupoid groupoid_;
  std::int64_t modulus_ = 1;
  std::vector<RootOfUnity> table_;
};

struct TwistElement {
  RootOfUnity phase;
  Id base = kNone;

  friend bool operator==(const TwistElement&, const TwistElement&) = default;
  friend bool operator<(const TwistElement& a, const TwistElement& b) {
    return std::tie(a.base, a.phase) < std::tie(b.base, b.phase);
  }
};

inline TwistElement section(Id g) { return {RootOfUnity::one(), g}; }

// (z;g)(w;h) = (zw c(g,h); gh)
inline TwistElement twist_mul(const Cocycle& c, const TwistElement& a, const TwistElement& b) {
  const FiniteGroupoid& g = c.groupoid();
  if (!g.composable(a.base, b.base)) fail(ErrorCode::NotComposable, std::to_string(a.base) + "," + std::to_string(b.base));
  return {a.phase * b.phase * c(a.base, b.base), g.compose(a.base, b.base)};
}

// (z;g)^-1 = (conj(z c(g,g^-1)); g^-1)
inline TwistElement twist_inv(const Cocycle& c, const TwistElement& a) {
  const Id inv = c.groupoid().inverse(a.base);
  return {(a.phase * c(a.base, inv)).conj(), inv};
}

inline TwistElement twist_pow(const Cocycle& c, const TwistElement& a, std::int64_t k) {
  const FiniteGroupoid& g = c.groupoid();
  if (!g.in_isotropy(a.base)) fail(ErrorCode::FiberMismatch, "power of a non-isotropy element");
  TwistElement base = k >= 0 ? a : twist_inv(c, a);
  TwistElement r = section(g.range(a.base));
  for (std::int64_t i = 0; i < (k >= 0 ? k : -k); ++i) r = twist_mul(c, r, base);
  return r;
}

// E_S is abelian iff st = ts and c(s,t) = c(t,s) in every fiber.
inline bool is_abelian_twist(const Cocycle& c, const Subgroupoid& s) {
  const FiniteGroupoid& g = c.groupoid();
  for (Id x : s.members())
    if (!g.in_isotropy(x)) fail(ErrorCode::PreconditionFailed, "subgroupoid is not contained in the isotropy");
  for (Id u = 0; u < static_cast<Id>(g.unit_count()); ++u) {
    const auto& f = s.fiber(u);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (g.compose(f[i], f[j]) != g.compose(f[j], f[i]) || c(f[i], f[j]) != c(f[j], f[i])) return false;
  }
  return true;
}

struct RestrictedCocycle {
  Cocycle cocycle;
  std::vector<Id> embedding;  // id in the restriction -> id in the parent
};

// c restricted to S, realized on S as a standalone groupoid.
inline RestrictedCocycle restrict(const Cocycle& c, const Subgroupoid& s) {
  const FiniteGroupoid& g = c.groupoid();
  const auto& mem = s.members();
  const std::size_t n = mem.size();
  std::vector<Id> local(g.size(), kNone);
  for (std::size_t i = 0; i < n; ++i) local[static_cast<std::size_t>(mem[i])] = static_cast<Id>(i);
  RawGroupoid raw;
  raw.element_count = n;
  for (Id u = 0; u < static_cast<Id>(g.unit_count()); ++u)
    if (s.contains(u)) raw.units.push_back(local[static_cast<std::size_t>(u)]);
  raw.range.resize(n);
  raw.source.resize(n);
  raw.compose.assign(n * n, kNone);
  for (std::size_t i = 0; i < n; ++i) {
    raw.range[i] = local[static_cast<std::size_t>(g.range(mem[i]))];
    raw.source[i] = local[static_cast<std::size_t>(g.source(mem[i]))];
    if (raw.range[i] == kNone || raw.source[i] == kNone) fail(ErrorCode::NotSubgroupoid, "subgroupoid misses a unit it uses");
    for (std::size_t j = 0; j < n; ++j)
      if (g.composable(mem[i], mem[j])) raw.compose[i * n + j] = local[static_cast<std::size_t>(g.compose(mem[i], mem[j]))];
  }
  std::vector<Id> relabel;
  FiniteGroupoid sub = validate_groupoid(raw, &relabel);
  std::vector<Id> embedding(n);
  for (std::size_t i = 0; i < n; ++i) embedding[static_cast<std::size_t>(relabel[i])] = mem[i];
  Cocycle rc = Cocycle::from_exponents(sub, c.modulus(), [&](Id x, Id y) {
    return c(embedding[static_cast<std::size_t>(x)], embedding[static_cast<std::size_t>(y)]).exponent_in(c.modulus());
  });
  return {std::move(rc), std::move(embedding)};
}

// [e, sigma] = e^-1 sigma^-1 e sigma
inline TwistElement commutator(const Cocycle& c, const TwistElement& e, const TwistElement& sigma) {
  const FiniteGroupoid& g = c.groupoid();
  const Id u = g.range(e.base);
  if (g.source(e.base) != u || g.range(sigma.base) != u || g.source(sigma.base) != u)
    fail(ErrorCode::FiberMismatch, "commutator of elements in different isotropy groups");
  TwistElement x = twist_mul(c, twist_inv(c, e), twist_inv(c, sigma));
  return twist_mul(c, twist_mul(c, x, e), sigma);
}

// { [e, (1;s)] : s in S(u) }, sorted and duplicate-free.
inline std::vector<TwistElement> commutator_set(const Cocycle& c, const TwistElement& e, const Subgroupoid& s) {
  const FiniteGroupoid& g = c.groupoid();
  const Id u = g.range(e.base);
  if (g.source(e.base) != u) fail(ErrorCode::FiberMismatch, "element is not in the isotropy");
  std::vector<TwistElement> out;
  for (Id t : s.fiber(u)) out.push_back(commutator(c, e, section(t)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// d: A -> roots with c(s,t) = d(s) d(t) d(st)^-1 on a fiber group A.
struct Coboundary {
  std::vector<Id> elements;        // A, ascending
  std::vector<RootOfUnity> values;  // values[i] = d(elements[i])
  std::int64_t modulus = 1;

  RootOfUnity at(Id s) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), s);
    if (it == elements.end() || *it != s) fail(ErrorCode::NotInDomain, "element outside the coboundary domain");
    return values[static_cast<std::size_t>(it - elements.begin())];
  }
};

// For generators b_i of orders n_i, (1;b_i)^{n_i} = (w_i; u). Choosing z_i with z_i^{n_i} = conj(w_i)
// makes phi(sum x_i b_i) = prod (z_i; b_i)^{x_i} a homomorphic section, and d = conj(phi).
inline Coboundary solve_coboundary(const Cocycle& c, const FiberGroup& a) {
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    for (int j = 0; j < i; ++j)
      if (c(a.element(i), a.element(j)) != c(a.element(j), a.element(i)))
        fail(ErrorCode::NotCoboundary, "cocycle is not symmetric on the group");
  CyclicDecomposition dec = decompose_abelian(a);
  std::vector<TwistElement> gens;
  for (std::size_t i = 0; i < dec.generators.size(); ++i) {
    TwistElement b = section(a.element(dec.generators[i]));
    TwistElement p = twist_pow(c, b, dec.orders[i]);
    gens.push_back({p.phase.conj().root(dec.orders[i]), b.base});
  }
  Coboundary d;
  d.elements = a.elements();
  d.values.resize(a.size());
  for (int x = 0; x < static_cast<int>(a.size()); ++x) {
    TwistElement phi = section(a.unit());
    const auto& co = dec.coords[static_cast<std::size_t>(x)];
    for (std::size_t i = 0; i < co.size(); ++i) phi = twist_mul(c, phi, twist_pow(c, gens[i], co[i]));
    if (phi.base != a.element(x)) fail(ErrorCode::NotCoboundary, "section lands on the wrong element");
    d.values[static_cast<std::size_t>(x)] = phi.phase.conj();
    d.modulus = std::lcm(d.modulus, d.values[static_cast<std::size_t>(x)].modulus());
  }
  for (int x = 0; x < static_cast<int>(a.size()); ++x)
    for (int y = 0; y < static_cast<int>(a.size()); ++y) {
      const RootOfUnity lhs = c(a.element(x), a.element(y)) * d.values[static_cast<std::size_t>(a.mul(x, y))];
      if (lhs != d.values[static_cast<std::size_t>(x)] * d.values[static_cast<std::size_t>(y)])
        fail(ErrorCode::NotCoboundary, "coboundary verification failed");
    }
  return d;
}

// Extends a character rho on H <= A to A: adjoin the least s outside H with minimal m >= 2
// such that s^m lies in H, and send s to the m-th root of rho(s^m) with least exponent.
inline std::vector<RootOfUnity> extend_character(const FiberGroup& a, const std::vector<Id>& h,
                                                 const std::vector<RootOfUnity>& rho) {
  if (h.size() != rho.size()) fail(ErrorCode::NotHomomorphic, "character size mismatch");
  if (!a.is_abelian()) fail(ErrorCode::NotAbelian, "group is not abelian");
  const std::size_t n = a.size();
  std::vector<char> in_h(n, 0);
  std::vector<RootOfUnity> value(n);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!a.contains(h[i])) fail(ErrorCode::NotHomomorphic, "subgroup element outside the group");
    int x = a.local(h[i]);
    if (in_h[static_cast<std::size_t>(x)] && value[static_cast<std::size_t>(x)] != rho[i])
      fail(ErrorCode::NotHomomorphic, "conflicting values");
    in_h[static_cast<std::size_t>(x)] = 1;
    value[static_cast<std::size_t>(x)] = rho[i];
  }
  if (!in_h[0] || !value[0].is_one()) fail(ErrorCode::NotHomomorphic, "character must send the unit to 1");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!in_h[x] || !in_h[y]) continue;
      std::size_t xy = static_cast<std::size_t>(a.mul(static_cast<int>(x), static_cast<int>(y)));
      if (!in_h[xy]) fail(ErrorCode::NotHomomorphic, "domain is not a subgroup");
      if (value[x] * value[y] != value[xy]) fail(ErrorCode::NotHomomorphic, "not multiplicative");
    }
  while (true) {
    int s = -1;
    for (std::size_t x = 0; x < n && s < 0; ++x)
      if (!in_h[x]) s = static_cast<int>(x);
    if (s < 0) break;
    std::int64_t m = 1;
    int p = s;
    while (!in_h[static_cast<std::size_t>(p)]) {
      p = a.mul(p, s);
      ++m;
    }
    const RootOfUnity z0 = value[static_cast<std::size_t>(p)].root(m);
    std::vector<int> old;
    for (std::size_t x = 0; x < n; ++x)
      if (in_h[x]) old.push_back(static_cast<int>(x));
    int sk = s;
    for (std::int64_t k = 1; k < m; ++k, sk = a.mul(sk, s))
      for (int x : old) {
        std::size_t y = static_cast<std::size_t>(a.mul(x, sk));
        in_h[y] = 1;
        value[y] = value[static_cast<std::size_t>(x)] * z0.pow(k);
      }
  }
  return value;
}

}  // namespace cartan
