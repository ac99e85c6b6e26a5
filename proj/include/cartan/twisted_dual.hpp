#pragma once

// Twisted Pontryagin dual of E_S and the actions of E and G/S on it.
//
// A character kappa at u is stored by its values on the section (1;s), s in S(u);
// kappa(z;s) = z * values(s), so T-equivariance holds by construction.

#include <algorithm>
#include <map>
#include <vector>

#include "cartan/abelian.hpp"
#include "cartan/cyclotomic.hpp"
#include "cartan/twist.hpp"

namespace cartan {

struct TwistedCharacter {
  Id unit = kNone;
  std::vector<Id> support;          // S(u), ascending
  std::vector<RootOfUnity> values;  // values[i] = kappa(1; support[i])

  RootOfUnity at(Id s) const {
    auto it = std::lower_bound(support.begin(), support.end(), s);
    if (it == support.end() || *it != s) fail(ErrorCode::FiberMismatch, "element outside the character's fiber");
    return values[static_cast<std::size_t>(it - support.begin())];
  }
  RootOfUnity operator()(const TwistElement& sigma) const { return sigma.phase * at(sigma.base); }

  friend bool operator==(const TwistedCharacter&, const TwistedCharacter&) = default;
  friend bool operator<(const TwistedCharacter& a, const TwistedCharacter& b) {
    return std::tie(a.unit, a.values) < std::tie(b.unit, b.values);
  }
};

struct DualFiber {
  Id unit = kNone;
  std::vector<TwistedCharacter> characters;
};

// kappa_chi(1;s) = d(s) chi(s) for every character chi of S(u), where d trivializes c on S(u).
inline DualFiber enumerate_dual_fiber(const Cocycle& c, const Subgroupoid& s, Id u) {
  FiberGroup a(c.groupoid(), s.fiber(u));
  if (!a.is_abelian()) fail(ErrorCode::NotAbelian, "S(u) is not abelian");
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    for (int j = 0; j < i; ++j)
      if (c(a.element(i), a.element(j)) != c(a.element(j), a.element(i)))
        fail(ErrorCode::NotAbelian, "the twist over S(u) is not abelian");
  Coboundary d = solve_coboundary(c, a);
  CyclicDecomposition dec = decompose_abelian(a);
  DualFiber fiber;
  fiber.unit = u;
  std::vector<std::int64_t> k(dec.orders.size(), 0);
  while (true) {
    TwistedCharacter kappa;
    kappa.unit = u;
    kappa.support = a.elements();
    for (std::size_t x = 0; x < a.size(); ++x) {
      RootOfUnity chi;
      const auto& co = dec.coords[x];
      for (std::size_t i = 0; i < co.size(); ++i) chi *= RootOfUnity::from_exponent(k[i] * co[i], dec.orders[i]);
      kappa.values.push_back(d.values[x] * chi);
    }
    fiber.characters.push_back(std::move(kappa));
    std::size_t i = 0;
    while (i < k.size() && ++k[i] == dec.orders[i]) k[i++] = 0;
    if (i == k.size()) break;
  }
  std::sort(fiber.characters.begin(), fiber.characters.end());
  for (std::size_t i = 1; i < fiber.characters.size(); ++i)
    if (fiber.characters[i] == fiber.characters[i - 1]) fail(ErrorCode::NotAbelian, "duplicate dual point");
  if (fiber.characters.size() != a.size()) fail(ErrorCode::NotAbelian, "dual fiber has the wrong size");
  return fiber;
}

// The pair (E, S) with S wide, normal and E_S abelian, together with G/S and the twisted dual.
class TwistedPair {
 public:
  static TwistedPair build(const Cocycle& c, const Subgroupoid& s) {
    if (!(s.parent() == c.groupoid())) fail(ErrorCode::PreconditionFailed, "subgroupoid of a different groupoid");
    NormalityReport rep = is_wide_normal(s);
    if (!rep.wide) fail(ErrorCode::PreconditionFailed, "subgroupoid is not wide");
    if (!rep.normal) fail(ErrorCode::NotNormal, "subgroupoid is not normal");
    if (!is_abelian_twist(c, s)) fail(ErrorCode::NotAbelian, "E_S is not abelian");
    TwistedPair p;
    p.c_ = c;
    p.s_ = s;
    p.q_ = quotient(s);
    const FiniteGroupoid& g = c.groupoid();
    for (Id u = 0; u < static_cast<Id>(g.unit_count()); ++u) {
      p.first_point_.push_back(static_cast<Id>(p.points_.size()));
      for (auto& kappa : enumerate_dual_fiber(c, s, u).characters) p.points_.push_back(std::move(kappa));
    }
    p.first_point_.push_back(static_cast<Id>(p.points_.size()));
    return p;
  }

  const Cocycle& twist() const { return c_; }
  const Subgroupoid& sub() const { return s_; }
  const FiniteGroupoid& groupoid() const { return c_.groupoid(); }
  const Quotient& quot() const { return q_; }

  std::size_t point_count() const { return points_.size(); }
  const TwistedCharacter& point(Id i) const { return points_[static_cast<std::size_t>(i)]; }
  Id point_unit(Id i) const { return points_[static_cast<std::size_t>(i)].unit; }
  // Dual points over u occupy [first_point(u), first_point(u+1)).
  Id first_point(Id u) const { return first_point_[static_cast<std::size_t>(u)]; }
  Id point_index(const TwistedCharacter& kappa) const {
    auto b = points_.begin() + first_point(kappa.unit), e = points_.begin() + first_point(kappa.unit + 1);
    auto it = std::lower_bound(b, e, kappa);
    if (it == e || !(*it == kappa)) fail(ErrorCode::NotInDomain, "character is not a dual point");
    return static_cast<Id>(it - points_.begin());
  }

 private:
  Cocycle c_;
  Subgroupoid s_;
  Quotient q_;
  std::vector<TwistedCharacter> points_;
  std::vector<Id> first_point_;
};

// (e |> kappa)(tau) = kappa(e^-1 tau e), a character at r(e).
inline TwistedCharacter act(const Cocycle& c, const Subgroupoid& s, const TwistElement& e, const TwistedCharacter& kappa) {
  const FiniteGroupoid& g = c.groupoid();
  if (g.source(e.base) != kappa.unit) fail(ErrorCode::FiberMismatch, "s(e) is not the base unit of kappa");
  TwistedCharacter out;
  out.unit = g.range(e.base);
  out.support = s.fiber(out.unit);
  const TwistElement e_inv = twist_inv(c, e);
  for (Id t : out.support) {
    TwistElement conj = twist_mul(c, twist_mul(c, e_inv, section(t)), e);
    out.values.push_back(kappa(conj));
  }
  return out;
}

inline TwistedCharacter act(const TwistedPair& p, const TwistElement& e, const TwistedCharacter& kappa) {
  return act(p.twist(), p.sub(), e, kappa);
}

// Action of a coset of G/S, computed from its minimal representative and checked against every other one.
inline TwistedCharacter act_coset(const TwistedPair& p, Id coset, const TwistedCharacter& kappa) {
  const Id rep = p.quot().representative[static_cast<std::size_t>(coset)];
  TwistedCharacter out = act(p, section(rep), kappa);
  const FiniteGroupoid& g = p.groupoid();
  for (Id t : p.sub().fiber(g.source(rep)))
    if (!(act(p, section(g.compose(rep, t)), kappa) == out))
      fail(ErrorCode::CriteriaDisagree, "coset action depends on the representative");
  return out;
}

// phi_kappa(f) = sum_s conj(kappa(1;s)) f(1;s) for f on E_S(u) given on the section.
inline Cyclotomic phi_kappa(const std::map<Id, Cyclotomic>& f, const TwistedCharacter& kappa) {
  Cyclotomic sum;
  for (const auto& [s, v] : f) {
    auto it = std::lower_bound(kappa.support.begin(), kappa.support.end(), s);
    if (it == kappa.support.end() || *it != s) continue;
    sum += Cyclotomic::root(kappa.at(s).conj()) * v;
  }
  return sum;
}

// Canonical representative of (e, kappa)K, K = {(sigma, kappa) : kappa(sigma) = 1}.
// With b the minimal element of e's coset and g = b t, the class is that of (z conj(c(b,t)) kappa(1;t) (1;b), kappa).
struct KernelCoset {
  Id coset = kNone;  // element of G/S
  Id point = kNone;  // dual point index of kappa
  RootOfUnity phase;

  friend bool operator==(const KernelCoset&, const KernelCoset&) = default;
  friend bool operator<(const KernelCoset& a, const KernelCoset& b) {
    return std::tie(a.coset, a.point, a.phase) < std::tie(b.coset, b.point, b.phase);
  }
};

inline KernelCoset kernel_coset(const TwistedPair& p, const TwistElement& e, Id point) {
  const FiniteGroupoid& g = p.groupoid();
  const TwistedCharacter& kappa = p.point(point);
  if (g.source(e.base) != kappa.unit) fail(ErrorCode::FiberMismatch, "s(e) is not the base unit of kappa");
  const Id coset = p.quot().projection[static_cast<std::size_t>(e.base)];
  const Id b = p.quot().representative[static_cast<std::size_t>(coset)];
  const Id t = g.compose(g.inverse(b), e.base);
  const RootOfUnity phase = e.phase * p.twist()(b, t).conj() * kappa.at(t);
  return {coset, point, phase};
}

}  // namespace cartan
