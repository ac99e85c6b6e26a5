#pragma once

// Exact roots of unity exp(2 pi i a/m), stored as a reduced fraction a/m in [0,1).

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cartan {

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

class RootOfUnity {
 public:
  constexpr RootOfUnity() = default;

  static RootOfUnity from_exponent(std::int64_t exponent, std::int64_t modulus) {
    if (modulus < 1) throw std::invalid_argument("RootOfUnity: modulus must be positive");
    RootOfUnity z;
    z.num_ = floor_mod(exponent, modulus);
    z.den_ = modulus;
    z.normalize();
    return z;
  }
  static RootOfUnity one() { return {}; }
  static RootOfUnity minus_one() { return from_exponent(1, 2); }

  std::int64_t numerator() const { return num_; }
  // Minimal modulus: the order of the root.
  std::int64_t modulus() const { return den_; }
  std::int64_t order() const { return den_; }
  bool is_one() const { return num_ == 0; }

  // Exponent of this root with respect to a primitive m-th root; m must be a multiple of modulus().
  std::int64_t exponent_in(std::int64_t m) const {
    if (m <= 0 || m % den_ != 0) throw std::invalid_argument("RootOfUnity: modulus does not contain root");
    return num_ * (m / den_);
  }

  RootOfUnity operator*(const RootOfUnity& o) const {
    std::int64_t l = lcm64(den_, o.den_);
    return from_exponent(num_ * (l / den_) + o.num_ * (l / o.den_), l);
  }
  RootOfUnity& operator*=(const RootOfUnity& o) { return *this = *this * o; }
  RootOfUnity inverse() const { return from_exponent(-num_, den_); }
  RootOfUnity conj() const { return inverse(); }
  RootOfUnity operator/(const RootOfUnity& o) const { return *this * o.inverse(); }

  RootOfUnity pow(std::int64_t k) const {
    // num * k may overflow for large k; reduce k modulo the order first.
    return from_exponent(num_ * floor_mod(k, den_), den_);
  }

  // The n-th root exp(2 pi i a/(m n)): the root of smallest exponent in [0,1).
  RootOfUnity root(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("RootOfUnity: root index must be positive");
    return from_exponent(num_, den_ * n);
  }

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  friend std::strong_ordering operator<=>(const RootOfUnity& a, const RootOfUnity& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }
  friend std::ostream& operator<<(std::ostream& os, const RootOfUnity& z) { return os << z.str(); }

 private:
  void normalize() {
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace cartan
