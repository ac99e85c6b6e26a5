#pragma once

// Elements of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1).
// The representation is canonical for a fixed N, so zero tests are exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cartan/root_of_unity.hpp"

namespace cartan {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

using IntPoly = std::vector<BigInt>;

// Exact division of integer polynomials (divisor monic).
inline IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    BigInt c = num[i];
    quot[i - dn] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

inline const IntPoly& cyclotomic_polynomial(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, IntPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by Phi_d for every proper divisor d.
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto jt = cache.find(d);
    IntPoly phi_d;
    if (jt == cache.end()) {
      mu.unlock();
      phi_d = cyclotomic_polynomial(d);
      mu.lock();
    } else {
      phi_d = jt->second;
    }
    p = poly_divide_exact(p, phi_d);
  }
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace detail

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_(1, Rational(0)) {}

  static Cyclotomic rational(const Rational& q) {
    Cyclotomic c;
    c.coeffs_[0] = q;
    return c;
  }
  static Cyclotomic root(const RootOfUnity& z, const Rational& scale = 1) {
    std::vector<Rational> full(static_cast<std::size_t>(z.modulus()), Rational(0));
    full[static_cast<std::size_t>(z.numerator())] = scale;
    return reduce(z.modulus(), std::move(full));
  }

  std::int64_t order() const { return order_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }
  std::optional<Rational> as_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return std::nullopt;
    return coeffs_[0];
  }
  bool is_positive_rational() const {
    auto q = as_rational();
    return q && *q > 0;
  }

  Cyclotomic lifted(std::int64_t n) const {
    if (n == order_) return *this;
    if (n % order_ != 0) throw std::invalid_argument("Cyclotomic: bad lift");
    std::int64_t step = n / order_;
    std::vector<Rational> full(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) full[i * static_cast<std::size_t>(step)] += coeffs_[i];
    return reduce(n, std::move(full));
  }

  Cyclotomic operator+(const Cyclotomic& o) const {
    std::int64_t n = std::lcm(order_, o.order_);
    Cyclotomic a = lifted(n), b = o.lifted(n);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
  }
  Cyclotomic operator-() const {
    Cyclotomic a = *this;
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  Cyclotomic operator-(const Cyclotomic& o) const { return *this + (-o); }
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }

  Cyclotomic operator*(const Cyclotomic& o) const {
    std::int64_t n = std::lcm(order_, o.order_);
    Cyclotomic a = lifted(n), b = o.lifted(n);
    std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        if (b.coeffs_[j] != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return reduce(n, std::move(prod));
  }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  Cyclotomic conj() const {
    std::vector<Rational> full(static_cast<std::size_t>(order_), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      std::size_t k = i == 0 ? 0 : static_cast<std::size_t>(order_) - i;
      full[k] += coeffs_[i];
    }
    return reduce(order_, std::move(full));
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    std::int64_t n = std::lcm(a.order_, b.order_);
    return a.lifted(n).coeffs_ == b.lifted(n).coeffs_;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << coeffs_[i] << ")";
      if (i > 0) os << "*z" << order_ << "^" << i;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  static Cyclotomic reduce(std::int64_t n, std::vector<Rational> p) {
    const auto& phi = detail::cyclotomic_polynomial(n);
    std::size_t deg = phi.size() - 1;
    for (std::size_t i = p.size(); i-- > deg;) {
      if (p[i] == 0) continue;
      Rational c = p[i];
      for (std::size_t j = 0; j <= deg; ++j) p[i - deg + j] -= c * Rational(phi[j]);
    }
    p.resize(deg, Rational(0));
    if (deg == 0) p.assign(1, Rational(0));
    Cyclotomic out;
    out.order_ = n;
    out.coeffs_ = std::move(p);
    return out;
  }

  std::int64_t order_;
  std::vector<Rational> coeffs_;
};

}  // namespace cartan
