#pragma once

// Finite groups realized inside one isotropy group, with local indexing,
// and cyclic decompositions of the abelian ones.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cartan/groupoid.hpp"

namespace cartan {

// A subgroup of G(u) with local indices 0..n-1; local 0 is the unit u.
class FiberGroup {
 public:
  FiberGroup() = default;

  FiberGroup(const FiniteGroupoid& g, std::vector<Id> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) fail(ErrorCode::FiberMismatch, "empty fiber group");
    unit_ = members.front();
    if (!g.is_unit(unit_)) fail(ErrorCode::FiberMismatch, "fiber group does not contain its unit");
    elements_ = std::move(members);
    local_.assign(g.size(), -1);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      Id x = elements_[i];
      if (g.range(x) != unit_ || g.source(x) != unit_) fail(ErrorCode::FiberMismatch, "element outside the isotropy group");
      local_[static_cast<std::size_t>(x)] = static_cast<int>(i);
    }
    const std::size_t n = elements_.size();
    mul_.resize(n * n);
    inv_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      inv_[i] = local(g.inverse(elements_[i]));
      for (std::size_t j = 0; j < n; ++j) mul_[i * n + j] = local(g.compose(elements_[i], elements_[j]));
    }
  }

  Id unit() const { return unit_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Id>& elements() const { return elements_; }
  Id element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  bool contains(Id x) const { return x >= 0 && static_cast<std::size_t>(x) < local_.size() && local_[static_cast<std::size_t>(x)] >= 0; }
  int local(Id x) const {
    int i = local_[static_cast<std::size_t>(x)];
    if (i < 0) fail(ErrorCode::NotSubgroupoid, "subset is not closed in its isotropy group");
    return i;
  }
  int mul(int i, int j) const { return mul_[static_cast<std::size_t>(i) * elements_.size() + static_cast<std::size_t>(j)]; }
  int inv(int i) const { return inv_[static_cast<std::size_t>(i)]; }
  int pow(int i, std::int64_t k) const {
    k %= static_cast<std::int64_t>(order(i));
    if (k < 0) k += order(i);
    int r = 0;
    for (std::int64_t t = 0; t < k; ++t) r = mul(r, i);
    return r;
  }
  std::int64_t order(int i) const {
    std::int64_t k = 1;
    for (int x = i; x != 0; x = mul(x, i)) ++k;
    return k;
  }
  bool is_abelian() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (mul_[i * n + j] != mul_[j * n + i]) return false;
    return true;
  }

 private:
  Id unit_ = kNone;
  std::vector<Id> elements_;
  std::vector<int> local_;
  std::vector<int> mul_;
  std::vector<int> inv_;
};

// A = <b_1> x ... x <b_r> with orders n_i; coords[x] gives the exponents of local element x.
struct CyclicDecomposition {
  std::vector<int> generators;
  std::vector<std::int64_t> orders;
  std::vector<std::vector<std::int64_t>> coords;

  std::int64_t exponent() const {
    std::int64_t e = 1;
    for (auto n : orders) e = std::lcm(e, n);
    return e;
  }
};

// Greedy decomposition: repeatedly take an element whose image in A/H has maximal order,
// then adjust it by H so that its own order equals that image order.
inline CyclicDecomposition decompose_abelian(const FiberGroup& a) {
  if (!a.is_abelian()) fail(ErrorCode::NotAbelian, "group is not abelian");
  const int n = static_cast<int>(a.size());
  std::vector<char> in_h(static_cast<std::size_t>(n), 0);
  in_h[0] = 1;
  std::vector<int> h_elems{0};
  CyclicDecomposition dec;
  auto image_order = [&](int x) {
    std::int64_t k = 1;
    for (int y = x; !in_h[static_cast<std::size_t>(y)]; y = a.mul(y, x)) ++k;
    return k;
  };
  while (static_cast<int>(h_elems.size()) < n) {
    int best = -1;
    std::int64_t best_order = 0;
    for (int x = 0; x < n; ++x) {
      if (in_h[static_cast<std::size_t>(x)]) continue;
      std::int64_t k = image_order(x);
      if (k > best_order) {
        best_order = k;
        best = x;
      }
    }
    int lift = -1;
    for (int hh : h_elems) {
      int y = a.mul(best, hh);
      if (a.order(y) == best_order) {
        lift = y;
        break;
      }
    }
    if (lift < 0) fail(ErrorCode::NotAbelian, "cyclic decomposition failed to lift a generator");
    dec.generators.push_back(lift);
    dec.orders.push_back(best_order);
    std::vector<int> next;
    int p = 0;
    for (std::int64_t k = 0; k < best_order; ++k, p = a.mul(p, lift))
      for (int hh : h_elems) next.push_back(a.mul(p, hh));
    for (int x : next) in_h[static_cast<std::size_t>(x)] = 1;
    h_elems = std::move(next);
  }
  dec.coords.assign(static_cast<std::size_t>(n), {});
  std::vector<std::int64_t> c(dec.orders.size(), 0);
  std::size_t filled = 0;
  while (true) {
    int x = 0;
    for (std::size_t i = 0; i < c.size(); ++i) x = a.mul(x, a.pow(dec.generators[i], c[i]));
    if (!dec.coords[static_cast<std::size_t>(x)].empty() || (c.empty() && filled > 0))
      fail(ErrorCode::NotAbelian, "cyclic decomposition is not a direct sum");
    dec.coords[static_cast<std::size_t>(x)] = c;
    ++filled;
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == dec.orders[i]) c[i++] = 0;
    if (i == c.size()) break;
  }
  if (filled != static_cast<std::size_t>(n)) fail(ErrorCode::NotAbelian, "cyclic decomposition is incomplete");
  return dec;
}

}  // namespace cartan
