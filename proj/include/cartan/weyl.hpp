#pragma once

// The Weyl groupoid (twisted dual) x| (G/S) and the Weyl twist in reduced form.
//
// Reduced form: the class of (e, kappa) is the W-arrow (e S, kappa) together with a phase
// relative to the canonical lift (1; b), b the minimal element of e S. The derived
// cocycle omega comes from multiplying canonical lifts.

#include <optional>
#include <set>
#include <vector>

#include "cartan/cartan_diag.hpp"
#include "cartan/constructions.hpp"
#include "cartan/integer_matrix.hpp"
#include "cartan/normalizer.hpp"
#include "cartan/twisted_dual.hpp"

namespace cartan {

inline ActionGroupoid build_weyl_groupoid(const TwistedPair& p) {
  std::vector<Id> momentum;
  for (Id x = 0; x < static_cast<Id>(p.point_count()); ++x) momentum.push_back(p.point_unit(x));
  return ActionGroupoid::build(p.quot().groupoid, momentum,
                               [&](Id h, Id x) { return p.point_index(act_coset(p, h, p.point(x))); });
}

struct ReducedWeylElement {
  Id arrow = kNone;
  RootOfUnity phase;
  friend bool operator==(const ReducedWeylElement&, const ReducedWeylElement&) = default;
};

struct WeylTwistRep {
  ActionGroupoid base;
  Cocycle cocycle;  // on base.groupoid()
  std::int64_t phase_modulus = 1;

  // Class of (e, kappa) in (dual x| E)/K.
  ReducedWeylElement reduce(const TwistedPair& p, const TwistElement& e, Id point) const {
    KernelCoset k = kernel_coset(p, e, point);
    return {base.arrow_id(k.coset, k.point), k.phase};
  }
};

inline WeylTwistRep build_weyl_twist(const TwistedPair& p, const ActionGroupoid& w) {
  const auto& reps = p.quot().representative;
  const FiniteGroupoid& q = p.quot().groupoid;
  const FiniteGroupoid& wg = w.groupoid();
  Cocycle omega = Cocycle::from_values(wg, [&](Id a, Id b) {
    const auto [h, y] = w.arrow(a);
    const auto [g, x] = w.arrow(b);
    const TwistElement prod = twist_mul(p.twist(), section(reps[static_cast<std::size_t>(h)]), section(reps[static_cast<std::size_t>(g)]));
    const KernelCoset k = kernel_coset(p, prod, x);
    if (k.coset != q.compose(h, g) || y != w.act(g, x))
      fail(ErrorCode::CriteriaDisagree, "canonical lifts do not multiply over the product arrow");
    return k.phase;
  });
  WeylTwistRep rep{w, omega, omega.modulus()};
  return rep;
}

inline WeylTwistRep build_weyl_twist(const TwistedPair& p) { return build_weyl_twist(p, build_weyl_groupoid(p)); }

inline std::vector<Id> isotropy_points(const ActionGroupoid& w) {
  std::vector<Id> out;
  const FiniteGroupoid& g = w.groupoid();
  for (Id a = 0; a < static_cast<Id>(g.size()); ++a)
    if (g.in_isotropy(a)) out.push_back(a);
  return out;
}

// (gS, kappa) is isotropy iff r(g) = s(g) and kappa is 1 on [(1;g), E_S].
inline bool iso_predicate(const TwistedPair& p, Id coset, Id point) {
  const FiniteGroupoid& g = p.groupoid();
  const Id b = p.quot().representative[static_cast<std::size_t>(coset)];
  if (!g.in_isotropy(b)) return false;
  const TwistedCharacter& kappa = p.point(point);
  for (const TwistElement& f : commutator_set(p.twist(), section(b), p.sub()))
    if (!kappa(f).is_one()) return false;
  return true;
}

inline bool check_iso_characterization(const TwistedPair& p, const ActionGroupoid& w) {
  const FiniteGroupoid& wg = w.groupoid();
  for (Id a = 0; a < static_cast<Id>(wg.size()); ++a) {
    const auto [h, x] = w.arrow(a);
    if (wg.in_isotropy(a) != iso_predicate(p, h, x)) return false;
  }
  return true;
}

inline bool is_principal(const ActionGroupoid& w) { return is_principal(w.groupoid()); }

// Every stabilizer is the unit at the point.
inline bool is_free(const ActionGroupoid& w) {
  const FiniteGroupoid& h = w.acting();
  for (Id x = 0; x < static_cast<Id>(w.point_count()); ++x)
    for (Id g = 0; g < static_cast<Id>(h.size()); ++g)
      if (w.act(g, x) == x && g != w.momentum(x)) return false;
  return true;
}

// Finite discrete spaces: the dense set of free points must be everything.
inline bool is_topologically_free_finite(const ActionGroupoid& w) { return is_free(w); }

// F(e, kappa) = (reduced phase of (e, kappa)) * x_{(eS, kappa)}.
struct TrivializingF {
  WeylTwistRep twist;
  std::vector<RootOfUnity> x;  // one value per W-arrow

  RootOfUnity operator()(const TwistedPair& p, const TwistElement& e, Id point) const {
    const ReducedWeylElement r = twist.reduce(p, e, point);
    return r.phase * x[static_cast<std::size_t>(r.arrow)];
  }
};

// Exhaustive check: F is multiplicative on composable pairs of section lifts and F(tau, kappa) = kappa(tau) on E_S.
inline bool verify_trivializing_F(const TwistedPair& p, const TrivializingF& f) {
  const FiniteGroupoid& g = p.groupoid();
  const Cocycle& c = p.twist();
  for (Id x = 0; x < static_cast<Id>(p.point_count()); ++x) {
    const TwistedCharacter& kappa = p.point(x);
    for (Id t : p.sub().fiber(kappa.unit))
      if (f(p, section(t), x) != kappa.at(t)) return false;
    for (Id a = 0; a < static_cast<Id>(g.size()); ++a) {
      if (g.source(a) != kappa.unit) continue;
      const Id y = p.point_index(act(p, section(a), kappa));
      for (Id b = 0; b < static_cast<Id>(g.size()); ++b) {
        if (g.source(b) != g.range(a)) continue;
        const RootOfUnity lhs = f(p, section(b), y) * f(p, section(a), x);
        const RootOfUnity rhs = f(p, twist_mul(c, section(b), section(a)), x);
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

// Unknowns x_a in T per W-arrow with x_a x_b = omega(a,b) x_{ab}, solved over Q/Z by Smith normal form.
inline std::optional<TrivializingF> solve_weyl_twist(const WeylTwistRep& rep) {
  const FiniteGroupoid& wg = rep.base.groupoid();
  const std::size_t n = wg.size();
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<RootOfUnity> rhs;
  std::set<std::pair<std::vector<std::int64_t>, std::pair<std::int64_t, std::int64_t>>> seen;
  for (Id a = 0; a < static_cast<Id>(n); ++a)
    for (Id b = 0; b < static_cast<Id>(n); ++b) {
      if (!wg.composable(a, b)) continue;
      std::vector<std::int64_t> row(n, 0);
      row[static_cast<std::size_t>(a)] += 1;
      row[static_cast<std::size_t>(b)] += 1;
      row[static_cast<std::size_t>(wg.compose(a, b))] -= 1;
      const RootOfUnity w = rep.cocycle(a, b);
      if (!seen.insert({row, {w.numerator(), w.modulus()}}).second) continue;
      rows.push_back(std::move(row));
      rhs.push_back(w);
    }
  Matrix<BigInt> m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  auto x = solve_mod_one(m, rhs);
  if (!x) return std::nullopt;
  return TrivializingF{rep, *x};
}

// Decides whether the Weyl twist of a Cartan pair is trivial and returns a verified witness.
inline std::optional<TrivializingF> weyl_twist_trivializable(const Cocycle& c, const Subgroupoid& s) {
  if (!check_cartan(c, s).cartan) fail(ErrorCode::PreconditionFailed, "pair is not Cartan");
  const TwistedPair p = TwistedPair::build(c, s);
  auto f = solve_weyl_twist(build_weyl_twist(p));
  if (f && !verify_trivializing_F(p, *f)) fail(ErrorCode::CriteriaDisagree, "solved F is not a homomorphism");
  return f;
}

// For every (e, kappa) with e over a phase in {1, zeta}: two positive singleton normalizers at e are
// twist-equivalent, and equivalence of normalizers matches equality of kernel cosets (twist mode)
// and of W-arrows (groupoid mode).
inline bool cross_check_delta(const TwistedPair& p, const WeylTwistRep& rep) {
  const FiniteGroupoid& g = p.groupoid();
  std::vector<RootOfUnity> phases{RootOfUnity::one()};
  if (rep.phase_modulus > 1) phases.push_back(RootOfUnity::from_exponent(1, rep.phase_modulus));
  try {
    for (Id x = 0; x < static_cast<Id>(p.point_count()); ++x) {
      const Id u = p.point_unit(x);
      std::vector<TwistElement> lifts;
      for (Id a = 0; a < static_cast<Id>(g.size()); ++a)
        if (g.source(a) == u)
          for (const auto& z : phases) lifts.push_back({z, a});
      std::vector<BisectionFunction> ns;
      for (const auto& e : lifts) {
        BisectionFunction n = singleton(e.base, Scalar{1, e.phase.conj()});
        BisectionFunction n2 = singleton(e.base, Scalar{3, e.phase.conj()});
        if (!weyl_equivalent(p, n, n2, x, WeylMode::Twist)) return false;
        if (!(weyl_class(p, n, x, WeylMode::Twist) == weyl_class(p, n2, x, WeylMode::Twist))) return false;
        ns.push_back(std::move(n));
      }
      for (std::size_t i = 0; i < lifts.size(); ++i)
        for (std::size_t j = 0; j < lifts.size(); ++j) {
          const ReducedWeylElement ri = rep.reduce(p, lifts[i], x), rj = rep.reduce(p, lifts[j], x);
          if (weyl_equivalent(p, ns[i], ns[j], x, WeylMode::Twist) != (ri == rj)) return false;
          if (weyl_equivalent(p, ns[i], ns[j], x, WeylMode::Groupoid) != (ri.arrow == rj.arrow)) return false;
        }
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace cartan
