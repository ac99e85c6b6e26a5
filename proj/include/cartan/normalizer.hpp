#pragma once

// Bisection-supported normalizers and Renault's Weyl equivalences at desk scale.
//
// Functions on E are equivariant, f(z e) = z f(e), and are stored by their values on (1;g).
// Normalizer values are (positive rational) * root of unity, so positivity is decidable.
//
// Criterion I (equality of twist classes) is evaluated through canonical kernel cosets;
// its agreement with criteria II and III is what weyl_equivalent checks.

#include <map>
#include <optional>
#include <vector>

#include "cartan/cyclotomic.hpp"
#include "cartan/twisted_dual.hpp"

namespace cartan {

struct Scalar {
  Rational magnitude = 1;  // > 0
  RootOfUnity phase;

  Cyclotomic value() const { return Cyclotomic::root(phase, magnitude); }
  Scalar operator*(const Scalar& o) const { return {magnitude * o.magnitude, phase * o.phase}; }
  Scalar operator*(const RootOfUnity& z) const { return {magnitude, phase * z}; }
  Scalar conj() const { return {magnitude, phase.conj()}; }
  bool is_positive() const { return phase.is_one(); }
  friend bool operator==(const Scalar&, const Scalar&) = default;
};

using BisectionFunction = std::map<Id, Scalar>;
using TwistFunction = std::map<Id, Cyclotomic>;

inline bool is_bisection(const FiniteGroupoid& g, const BisectionFunction& f) {
  std::vector<char> r(g.unit_count(), 0), s(g.unit_count(), 0);
  for (const auto& [x, v] : f) {
    if (v.magnitude <= 0) return false;
    if (r[static_cast<std::size_t>(g.range(x))]++ || s[static_cast<std::size_t>(g.source(x))]++) return false;
  }
  return true;
}

inline BisectionFunction singleton(Id g, Scalar v = {}) { return {{g, v}}; }

inline TwistFunction to_twist_function(const BisectionFunction& f) {
  TwistFunction out;
  for (const auto& [x, v] : f) out.emplace(x, v.value());
  return out;
}

// Value of an equivariant bisection function at an arbitrary twist element.
inline std::optional<Scalar> evaluate(const BisectionFunction& f, const TwistElement& e) {
  auto it = f.find(e.base);
  if (it == f.end()) return std::nullopt;
  return it->second * e.phase;
}

// (f1 * f2)(gh) collects f1(g) f2(h) conj(c(g,h)).
inline BisectionFunction convolve(const Cocycle& c, const BisectionFunction& f1, const BisectionFunction& f2) {
  const FiniteGroupoid& g = c.groupoid();
  if (!is_bisection(g, f1) || !is_bisection(g, f2)) fail(ErrorCode::PreconditionFailed, "convolution of non-bisections");
  BisectionFunction out;
  for (const auto& [x, a] : f1)
    for (const auto& [y, b] : f2)
      if (g.composable(x, y)) {
        if (!out.emplace(g.compose(x, y), a * b * c(x, y).conj()).second)
          fail(ErrorCode::CriteriaDisagree, "bisection product has two terms at one point");
      }
  if (!is_bisection(g, out)) fail(ErrorCode::CriteriaDisagree, "bisection product is not a bisection");
  return out;
}

// f*(g^-1) = c(g^-1, g) conj(f(g))
inline BisectionFunction adjoint(const Cocycle& c, const BisectionFunction& f) {
  const FiniteGroupoid& g = c.groupoid();
  BisectionFunction out;
  for (const auto& [x, a] : f) out.emplace(g.inverse(x), a.conj() * c(g.inverse(x), x));
  return out;
}

inline BisectionFunction expect(const Subgroupoid& s, const BisectionFunction& f) {
  BisectionFunction out;
  for (const auto& [x, a] : f)
    if (s.contains(x)) out.emplace(x, a);
  return out;
}

inline TwistFunction convolve(const Cocycle& c, const TwistFunction& f1, const TwistFunction& f2) {
  const FiniteGroupoid& g = c.groupoid();
  TwistFunction out;
  for (const auto& [x, a] : f1)
    for (const auto& [y, b] : f2)
      if (g.composable(x, y)) out[g.compose(x, y)] += a * b * Cyclotomic::root(c(x, y).conj());
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

inline TwistFunction adjoint(const Cocycle& c, const TwistFunction& f) {
  const FiniteGroupoid& g = c.groupoid();
  TwistFunction out;
  for (const auto& [x, a] : f) out.emplace(g.inverse(x), a.conj() * Cyclotomic::root(c(g.inverse(x), x)));
  return out;
}

// The support point of n over kappa's unit.
inline Id support_over(const FiniteGroupoid& g, const BisectionFunction& n, Id u) {
  for (const auto& [x, v] : n)
    if (g.source(x) == u) return x;
  fail(ErrorCode::NotInDomain, "unit is not in s(supp(n))");
}

// e in supp(n) over u with n(e) > 0.
inline TwistElement positive_lift(const FiniteGroupoid& g, const BisectionFunction& n, Id u) {
  const Id x = support_over(g, n, u);
  return {n.at(x).phase.conj(), x};
}

inline TwistedCharacter alpha_n(const TwistedPair& p, const BisectionFunction& n, const TwistedCharacter& kappa) {
  return act(p, positive_lift(p.groupoid(), n, kappa.unit), kappa);
}

enum class WeylMode { Twist, Groupoid };

struct CriteriaReport {
  bool first = false;   // I or i
  bool second = false;  // II or ii
  bool third = false;   // III or iii
};

// phi_kappa(Phi(m^* n)).
inline Cyclotomic expectation_value(const TwistedPair& p, const BisectionFunction& n, const BisectionFunction& m,
                                    const TwistedCharacter& kappa) {
  const BisectionFunction prod = expect(p.sub(), convolve(p.twist(), adjoint(p.twist(), m), n));
  return phi_kappa(to_twist_function(prod), kappa);
}

inline CriteriaReport weyl_criteria(const TwistedPair& p, const BisectionFunction& n, const BisectionFunction& m, Id point,
                                    WeylMode mode) {
  const FiniteGroupoid& g = p.groupoid();
  const TwistedCharacter& kappa = p.point(point);
  const Id u = kappa.unit;
  const TwistElement en = positive_lift(g, n, u), em = positive_lift(g, m, u);
  const Cyclotomic value = expectation_value(p, n, m, kappa);
  CriteriaReport r;
  if (mode == WeylMode::Twist) {
    r.first = kernel_coset(p, en, point) == kernel_coset(p, em, point);
    r.second = value.is_positive_rational();
    for (Id t : p.sub().fiber(u)) {
      const TwistElement sigma{kappa.at(t).conj(), t};
      const auto v = evaluate(m, twist_mul(p.twist(), en, sigma));
      if (v && v->is_positive()) r.third = true;
    }
  } else {
    for (Id t : p.sub().fiber(u))
      if (g.compose(en.base, t) == em.base) r.first = true;
    r.second = !value.is_zero();
    const auto& proj = p.quot().projection;
    r.third = proj[static_cast<std::size_t>(en.base)] == proj[static_cast<std::size_t>(em.base)];
  }
  return r;
}

inline bool weyl_equivalent(const TwistedPair& p, const BisectionFunction& n, const BisectionFunction& m, Id point,
                            WeylMode mode) {
  const CriteriaReport r = weyl_criteria(p, n, m, point, mode);
  if (r.first != r.second || r.second != r.third)
    fail(ErrorCode::CriteriaDisagree, std::string("criteria disagree: ") + (r.first ? "1" : "0") + (r.second ? "1" : "0") +
                                          (r.third ? "1" : "0"));
  return r.first;
}

struct WeylClass {
  WeylMode kind = WeylMode::Twist;
  KernelCoset coset;  // phase is 1 for groupoid classes

  friend bool operator==(const WeylClass&, const WeylClass&) = default;
};

// Canonical form of [[n, phi_kappa]] (twist) or [n, phi_kappa] (groupoid).
inline WeylClass weyl_class(const TwistedPair& p, const BisectionFunction& n, Id point, WeylMode kind) {
  KernelCoset k = kernel_coset(p, positive_lift(p.groupoid(), n, p.point_unit(point)), point);
  if (kind == WeylMode::Groupoid) k.phase = RootOfUnity::one();
  return {kind, k};
}

}  // namespace cartan
