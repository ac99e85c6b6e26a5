#pragma once

// Symbolic engine for G = Z^2 with c_theta(g, h) = lambda^{g2 h1}, lambda = e^{2 pi i theta}.
//
// Phases are powers of Lambda = e^{pi i theta} (so lambda = Lambda^2). For irrational theta,
// Lambda^a = Lambda^b iff a = b; for theta = p/q, iff a = b mod 2q.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cartan/constructions.hpp"
#include "cartan/integer_matrix.hpp"
#include "cartan/normalizer.hpp"
#include "cartan/twist.hpp"

namespace cartan {

using Vec2 = std::array<std::int64_t, 2>;

struct Theta {
  bool irrational = false;
  std::int64_t p = 0;  // 0 <= p < q, gcd(p, q) = 1
  std::int64_t q = 1;

  static Theta formal_irrational() { return {true, 0, 0}; }
  static Theta rational(std::int64_t p, std::int64_t q) {
    if (q < 1) fail(ErrorCode::ParseError, "theta denominator must be positive");
    p = floor_mod(p, q);
    if (std::gcd(p, q) != 1) fail(ErrorCode::ParseError, "theta = p/q needs gcd(p, q) = 1");
    return {false, p, q};
  }
  static Theta parse(const std::string& text) {
    if (text == "irrational") return formal_irrational();
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return rational(std::stoll(text), 1);
      return rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
      fail(ErrorCode::ParseError, "theta must be 'irrational' or 'p/q': " + text);
    }
  }

  // Equality of Lambda^a and Lambda^b.
  bool half_phase_equal(std::int64_t a, std::int64_t b) const { return irrational ? a == b : floor_mod(a - b, 2 * q) == 0; }
  bool phase_is_one(std::int64_t lambda_exponent) const { return half_phase_equal(2 * lambda_exponent, 0); }
  std::string str() const { return irrational ? "irrational" : std::to_string(p) + "/" + std::to_string(q); }
};

inline std::int64_t conj_exponent(const Vec2& g, const Vec2& h) { return g[0] * h[1] - g[1] * h[0]; }

// Extended Euclid: a x + b y = g >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    std::int64_t t = a / b;
    std::tie(a, b) = std::make_tuple(b, a - t * b);
    std::tie(x0, x1) = std::make_tuple(x1, x0 - t * x1);
    std::tie(y0, y1) = std::make_tuple(y1, y0 - t * y1);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

// S = Z(k,0) + Z(m,n) with k, n >= 0; 0 <= m < k when k > 0. For k = 0 the generator (m, n) has n > 0.
struct LatticeSubgroup {
  Matrix<std::int64_t> generators;  // columns
  std::int64_t k = 0, m = 0, n = 0;

  int rank() const { return (k > 0 ? 1 : 0) + (n > 0 ? 1 : 0); }
  bool full_rank() const { return rank() == 2; }
  // Generator of a rank-one lattice.
  Vec2 rank_one_generator() const { return n > 0 ? Vec2{m, n} : Vec2{k, 0}; }
  Matrix<std::int64_t> hermite_matrix() const { return Matrix<std::int64_t>(2, 2, {k, m, 0, n}); }

  bool contains(const Vec2& h) const {
    std::int64_t h1 = h[0];
    if (n > 0) {
      if (h[1] % n != 0) return false;
      h1 -= (h[1] / n) * m;
    } else if (h[1] != 0) {
      return false;
    }
    return k > 0 ? h1 % k == 0 : h1 == 0;
  }
  std::string str() const {
    std::ostringstream os;
    if (k > 0) os << "Z(" << k << ",0)";
    if (k > 0 && n > 0) os << " + ";
    if (n > 0) os << "Z(" << m << "," << n << ")";
    if (k == 0 && n == 0) os << "0";
    return os.str();
  }
};

inline LatticeSubgroup hermite_form(const Matrix<std::int64_t>& gens) {
  if (gens.rows() != 2) fail(ErrorCode::PreconditionFailed, "lattice generators must be 2-vectors");
  Vec2 v{0, 0};
  std::int64_t k = 0;
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    Vec2 c{gens(0, j), gens(1, j)};
    if (c[1] == 0) {
      k = std::gcd(k, c[0]);
      continue;
    }
    auto [g, x, y] = ext_gcd(v[1], c[1]);
    Vec2 nv{x * v[0] + y * c[0], g};
    Vec2 w{(c[1] / g) * v[0] - (v[1] / g) * c[0], 0};
    k = std::gcd(k, w[0]);
    v = nv;
  }
  LatticeSubgroup s;
  s.generators = gens;
  s.k = std::abs(k);
  s.n = v[1];
  s.m = s.n > 0 ? (s.k > 0 ? floor_mod(v[0], s.k) : v[0]) : 0;
  return s;
}

inline LatticeSubgroup lattice_from_generators(const std::vector<Vec2>& gens) {
  Matrix<std::int64_t> m(2, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    m(0, j) = gens[j][0];
    m(1, j) = gens[j][1];
  }
  return hermite_form(m);
}

// Multivariate integer polynomials, used for exponent identities.
class Polynomial {
 public:
  using Monomial = std::vector<int>;

  explicit Polynomial(std::size_t vars = 0) : vars_(vars) {}
  static Polynomial constant(std::size_t vars, std::int64_t c) {
    Polynomial p(vars);
    if (c != 0) p.terms_[Monomial(vars, 0)] = c;
    return p;
  }
  static Polynomial variable(std::size_t vars, std::size_t i) {
    Polynomial p(vars);
    Monomial mono(vars, 0);
    mono[i] = 1;
    p.terms_[mono] = 1;
    return p;
  }

  Polynomial operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [mono, c] : o.terms_) r.add(mono, c);
    return r;
  }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [mono, c] : r.terms_) c = -c;
    return r;
  }
  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }
  Polynomial operator*(const Polynomial& o) const {
    Polynomial r(vars_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        Monomial mono(vars_);
        for (std::size_t i = 0; i < vars_; ++i) mono[i] = ma[i] + mb[i];
        r.add(mono, ca * cb);
      }
    return r;
  }
  friend Polynomial operator*(std::int64_t c, const Polynomial& p) { return constant(p.vars_, c) * p; }

  bool is_zero() const { return terms_.empty(); }
  // Every coefficient is divisible by d (d = 0 means the polynomial vanishes).
  bool vanishes_mod(std::int64_t d) const {
    for (const auto& [mono, c] : terms_)
      if (d == 0 || c % d != 0) return false;
    return true;
  }
  BigInt coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      BigInt c = it->second;
      bool constant_term = std::all_of(it->first.begin(), it->first.end(), [](int e) { return e == 0; });
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      BigInt a = c < 0 ? BigInt(-c) : c;
      if (a != 1 || constant_term) os << a;
      for (std::size_t i = 0; i < vars_; ++i) {
        if (it->first[i] == 0) continue;
        os << names[i];
        if (it->first[i] > 1) os << "^" << it->first[i];
      }
    }
    return os.str();
  }

 private:
  void add(const Monomial& mono, const BigInt& c) {
    if (c == 0) return;
    BigInt& t = terms_[mono];
    t += c;
    if (t == 0) terms_.erase(mono);
  }

  std::size_t vars_;
  std::map<Monomial, BigInt> terms_;
};

struct DThetaReport {
  // d(l(k,0) + r(m,n)) = Lambda^{exponent(l, r)}
  Polynomial exponent{2};
  // Lambda-exponent of c(s,t) d(s+t) - d(s) d(t) in (l, r, l', r'); must vanish for theta.
  Polynomial defect{4};
  bool verified = false;
};

inline DThetaReport coboundary_d_theta(const Theta& theta, const LatticeSubgroup& s) {
  auto V4 = [](std::size_t i) { return Polynomial::variable(4, i); };
  const Polynomial l = V4(0), r = V4(1), l2 = V4(2), r2 = V4(3);
  auto C = [](std::int64_t c) { return Polynomial::constant(4, c); };
  const std::int64_t mn = s.m * s.n;
  auto d = [&](const Polynomial& rr) { return C(-mn) * rr * rr; };
  // s = (l k + r m, r n), t = (l' k + r' m, r' n); c(s,t) = Lambda^{2 s2 t1}.
  const Polynomial s2 = C(s.n) * r;
  const Polynomial t1 = C(s.k) * l2 + C(s.m) * r2;
  DThetaReport rep;
  rep.exponent = Polynomial::constant(2, -mn) * Polynomial::variable(2, 1) * Polynomial::variable(2, 1);
  rep.defect = C(2) * s2 * t1 + d(r + r2) - d(r) - d(r2);
  rep.verified = theta.irrational ? rep.defect.is_zero() : rep.defect.vanishes_mod(2 * theta.q);
  return rep;
}

inline bool check_cartan_rotation(const Theta& theta, const LatticeSubgroup& s) {
  if (theta.irrational) {
    if (s.rank() != 1) return false;
    const Vec2 g = s.rank_one_generator();
    return std::gcd(g[0], g[1]) == 1;
  }
  return s.full_rank() && s.k * s.n == theta.q;
}

// Basis (columns) of {h in Z^2 : conj_exponent(s, h) = 0 (irrational) or = 0 mod q, for all s in S}.
inline std::vector<Vec2> commutant_lattice(const Theta& theta, const LatticeSubgroup& s) {
  const std::vector<Vec2> gens{{s.k, 0}, {s.m, s.n}};
  Matrix<std::int64_t> a(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    a(i, 0) = -gens[i][1];
    a(i, 1) = gens[i][0];
  }
  SmithForm<std::int64_t> f = smith_normal_form(a);
  // A h = 0 (mod q) iff D y = 0 (mod q) with h = Q y.
  std::vector<Vec2> basis;
  for (std::size_t i = 0; i < 2; ++i) {
    std::int64_t step;
    if (i < f.rank) {
      if (theta.irrational) continue;
      step = theta.q / std::gcd(f.n(i, i), theta.q);
    } else {
      step = 1;
    }
    basis.push_back({f.q(0, i) * step, f.q(1, i) * step});
  }
  return basis;
}

inline bool check_diag_rotation(const Theta& theta, const LatticeSubgroup& s) {
  if (!check_cartan_rotation(theta, s)) fail(ErrorCode::PreconditionFailed, "subgroup is not Cartan for this theta");
  // Commutators all have base 0, so pi is injective on [e, E_S] iff e commutes with E_S.
  for (const Vec2& h : commutant_lattice(theta, s))
    if (!s.contains(h)) return false;
  return true;
}

struct RotationFactor {
  // T x|_{angle} Z/order, acting by w -> e^{2 pi i angle g} w
  std::int64_t angle_num = 0;
  std::int64_t angle_den = 1;
  std::int64_t order = 1;
  std::int64_t stabilizer = 1;  // generator of {g : g * angle in Z}
};

struct WeylRotationDescriptor {
  bool irrational = false;
  // Irrational case: circle x| Z by lambda, with G/S -> Z, g -> c0 g1 + c1 g2.
  Vec2 quotient_map{0, 0};
  bool quotient_iso_verified = false;
  // Rational case: product of two finite rotation action groupoids.
  std::int64_t k_prime = 0, n_prime = 0;
  RotationFactor first, second;
  bool freeness_certificate = false;

  std::string str() const {
    std::ostringstream os;
    if (irrational) {
      os << "T x|_theta Z, G/S -> Z: g -> " << quotient_map[0] << "*g1 + " << quotient_map[1] << "*g2";
    } else {
      os << "(T x|_{" << first.angle_num << "/" << first.angle_den << "} Z/" << first.order << ") x (T x|_{"
         << second.angle_num << "/" << second.angle_den << "} Z/" << second.order << ")";
    }
    return os.str();
  }
};

inline RotationFactor rotation_factor(std::int64_t num, std::int64_t den, std::int64_t order) {
  std::int64_t g = std::gcd(num, den);
  RotationFactor f{num / g, den / g, order, 1};
  f.stabilizer = f.angle_den;  // g * a/b in Z iff b | g
  return f;
}

inline WeylRotationDescriptor weyl_groupoid_rotation(const Theta& theta, const LatticeSubgroup& s) {
  if (!check_cartan_rotation(theta, s)) fail(ErrorCode::PreconditionFailed, "subgroup is not Cartan for this theta");
  WeylRotationDescriptor d;
  d.irrational = theta.irrational;
  if (theta.irrational) {
    const Vec2 gen = s.rank_one_generator();
    d.quotient_map = {gen[1], -gen[0]};
    auto [g, a, b] = ext_gcd(gen[0], gen[1]);
    // Kernel is S, the map is onto (Bezout), and it equals the action exponent conj_exponent(g, gen).
    Polynomial g1 = Polynomial::variable(2, 0), g2 = Polynomial::variable(2, 1);
    Polynomial phi = Polynomial::constant(2, d.quotient_map[0]) * g1 + Polynomial::constant(2, d.quotient_map[1]) * g2;
    Polynomial action = g1 * Polynomial::constant(2, gen[1]) - g2 * Polynomial::constant(2, gen[0]);
    const Vec2 preimage{b, -a};
    d.quotient_iso_verified = g == 1 && conj_exponent(gen, gen) == 0 &&
                              d.quotient_map[0] * preimage[0] + d.quotient_map[1] * preimage[1] == 1 && phi == action;
    return d;
  }
  SmithForm<std::int64_t> f = smith_normal_form(s.hermite_matrix());
  d.k_prime = f.n(0, 0);
  d.n_prime = f.n(1, 1);
  if (d.k_prime != std::gcd(std::gcd(s.k, s.m), s.n) || d.k_prime * d.n_prime != s.k * s.n ||
      !(f.p * s.hermite_matrix() * f.q == f.n))
    fail(ErrorCode::CriteriaDisagree, "Smith form does not match gcd(k,m,n), nk/gcd");
  // Action of (g1, g2) on (w1, w2): (lambda^{n' g1} w1, lambda^{k' g2} w2).
  d.first = rotation_factor(theta.p * d.n_prime, theta.q, d.k_prime);
  d.second = rotation_factor(theta.p * d.k_prime, theta.q, d.n_prime);
  // Stabilizers are k'Z and n'Z, so only T = k'Z x n'Z fixes points.
  d.freeness_certificate = std::gcd(theta.p, d.k_prime) == 1 && std::gcd(theta.p, d.n_prime) == 1 &&
                           d.first.stabilizer == d.k_prime && d.second.stabilizer == d.n_prime;
  return d;
}

struct RotationF {
  std::int64_t m = 0, n = 0, a = 0, b = 0;
  Polynomial lambda_half_exponent{2};  // Lambda-exponent in (h1, h2)
  Polynomial w_exponent{2};            // exponent of w in (h1, h2)
  bool homomorphism_verified = false;
  bool restriction_verified = false;

  std::string str() const {
    return "F(z;h;k_w) = z * Lambda^(" + lambda_half_exponent.str({"h1", "h2"}) + ") * w^(" + w_exponent.str({"h1", "h2"}) +
           "), Lambda = e^(pi i theta)";
  }
};

// a m + b n = 1 with |a| minimal (ties to a >= 0); b = 0 when n = 0.
inline std::pair<std::int64_t, std::int64_t> canonical_bezout(std::int64_t m, std::int64_t n) {
  auto [g, a, b] = ext_gcd(m, n);
  if (g != 1) fail(ErrorCode::NotCoprime, "gcd(m, n) != 1");
  if (n == 0) return {m, 0};
  const std::int64_t an = std::abs(n);
  a = floor_mod(a, an);
  if (2 * a > an) a -= an;
  return {a, (1 - a * m) / n};
}

// F(z;h;kappa_w) = z Lambda^{a n h1^2 - 2 a m h1 h2 - b m h2^2} w^{a h1 + b h2} for S = Z(m,n), irrational theta.
inline RotationF trivializing_F_rotation(std::int64_t m, std::int64_t n) {
  RotationF f;
  f.m = m;
  f.n = n;
  std::tie(f.a, f.b) = canonical_bezout(m, n);
  const std::size_t V = 5;  // g1, g2, h1, h2, r
  auto X = [](std::size_t i) { return Polynomial::variable(V, i); };
  auto C = [](std::int64_t c) { return Polynomial::constant(V, c); };
  auto Q = [&](const Polynomial& x1, const Polynomial& x2) {
    return C(f.a * n) * x1 * x1 - C(2 * f.a * m) * x1 * x2 - C(f.b * m) * x2 * x2;
  };
  auto L = [&](const Polynomial& x1, const Polynomial& x2) { return C(f.a) * x1 + C(f.b) * x2; };
  const Polynomial g1 = X(0), g2 = X(1), h1 = X(2), h2 = X(3), r = X(4);
  // F(z';g;k_{lambda^{h1 n - h2 m} w}) F(z;h;k_w) = F(z' z lambda^{g2 h1}; g+h; k_w)
  const Polynomial lhs_lambda = Q(g1, g2) + C(2) * (C(n) * h1 - C(m) * h2) * L(g1, g2) + Q(h1, h2);
  const Polynomial rhs_lambda = C(2) * g2 * h1 + Q(g1 + h1, g2 + h2);
  const Polynomial lhs_w = L(g1, g2) + L(h1, h2), rhs_w = L(g1 + h1, g2 + h2);
  f.homomorphism_verified = (lhs_lambda - rhs_lambda).is_zero() && (lhs_w - rhs_w).is_zero();
  // F(z; r(m,n); k_w) = z d(r(m,n)) w^r with d(r(m,n)) = Lambda^{-r^2 m n}.
  const Polynomial rm = C(m) * r, rn = C(n) * r;
  f.restriction_verified = (Q(rm, rn) + C(m * n) * r * r).is_zero() && (L(rm, rn) - r).is_zero();
  auto H = [](std::size_t i) { return Polynomial::variable(2, i); };
  auto C2 = [](std::int64_t c) { return Polynomial::constant(2, c); };
  f.lambda_half_exponent = C2(f.a * n) * H(0) * H(0) - C2(2 * f.a * m) * H(0) * H(1) - C2(f.b * m) * H(1) * H(1);
  f.w_exponent = C2(f.a) * H(0) + C2(f.b) * H(1);
  return f;
}

enum class Verdict { True, False, Unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

// The rational case is not settled, so only the irrational case is decided.
inline Verdict weyl_trivializable_rotation(const Theta& theta, const LatticeSubgroup& s) {
  if (!check_cartan_rotation(theta, s)) fail(ErrorCode::PreconditionFailed, "subgroup is not Cartan for this theta");
  if (!theta.irrational) return Verdict::Unknown;
  const Vec2 g = s.rank_one_generator();
  const RotationF f = trivializing_F_rotation(g[0], g[1]);
  return f.homomorphism_verified && f.restriction_verified ? Verdict::True : Verdict::False;
}

// (Z/q)^2 with c(g, h) = e^{2 pi i p g2 h1 / q} and the image of S; element (g1, g2) has id g1 + q g2.
struct FiniteShadow {
  Cocycle cocycle;
  Subgroupoid sub;
  std::int64_t modulus = 1;

  Id id(const Vec2& g) const {
    return static_cast<Id>(floor_mod(g[0], modulus) + modulus * floor_mod(g[1], modulus));
  }
};

inline FiniteShadow finite_shadow(const Theta& theta, const LatticeSubgroup& s) {
  if (theta.irrational) fail(ErrorCode::PreconditionFailed, "finite shadows need rational theta");
  const std::int64_t q = theta.q;
  FiniteGroupoid g = direct_product(cyclic_group(static_cast<std::size_t>(q)), cyclic_group(static_cast<std::size_t>(q)));
  FiniteShadow sh;
  sh.modulus = q;
  sh.cocycle = Cocycle::from_exponents(g, q, [q, p = theta.p](Id x, Id y) { return p * (x / q) * (y % q); });
  std::vector<Id> gens{sh.id({s.k, 0}), sh.id({s.m, s.n})};
  sh.sub = Subgroupoid::make(g, generated_subgroup(g, 0, gens));
  return sh;
}

struct GeneratorsReport {
  // vu = Lambda^{2 e} uv for the standard c_theta-twisted convolution and for the equivariant convolution on E.
  std::int64_t twisted_algebra_exponent = 0;
  std::int64_t equivariant_exponent = 0;
  bool ok = false;
};

// u = delta_(1,0), v = delta_(0,1). Standard twisted convolution: delta_g * delta_h = c(g,h) delta_{g+h}.
// The equivariant convolution on E is taken from the normalizer algebra (finite shadow for rational theta).
inline GeneratorsReport rotation_generators_check(const Theta& theta) {
  const Vec2 u{1, 0}, v{0, 1};
  auto c_exp = [](const Vec2& g, const Vec2& h) { return g[1] * h[0]; };
  GeneratorsReport rep;
  rep.twisted_algebra_exponent = c_exp(v, u) - c_exp(u, v);
  if (theta.irrational) {
    rep.equivariant_exponent = -(c_exp(v, u) - c_exp(u, v));
  } else {
    const std::int64_t q = theta.q;
    FiniteGroupoid g = direct_product(cyclic_group(static_cast<std::size_t>(q)), cyclic_group(static_cast<std::size_t>(q)));
    Cocycle c = Cocycle::from_exponents(g, q, [q, p = theta.p](Id x, Id y) { return p * (x / q) * (y % q); });
    auto id = [q](const Vec2& x) { return static_cast<Id>(floor_mod(x[0], q) + q * floor_mod(x[1], q)); };
    const BisectionFunction fu = singleton(id(u)), fv = singleton(id(v));
    const BisectionFunction vu = convolve(c, fv, fu), uv = convolve(c, fu, fv);
    const RootOfUnity ratio = vu.begin()->second.phase / uv.begin()->second.phase;
    // ratio = lambda^e = e^{2 pi i p e / q}; recover e modulo q from p^{-1}.
    auto [gg, pinv, unused] = ext_gcd(theta.p, q);
    (void)gg;
    (void)unused;
    rep.equivariant_exponent = floor_mod(ratio.exponent_in(q) * pinv, q);
  }
  rep.ok = theta.phase_is_one(rep.twisted_algebra_exponent - 1) && theta.phase_is_one(rep.equivariant_exponent + 1);
  return rep;
}

}  // namespace cartan
