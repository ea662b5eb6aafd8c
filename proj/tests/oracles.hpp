// Brute-force reference implementations working on element sets. Only the
// multiplication of the pc engine is shared with the code under test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "thinville/pc.hpp"

namespace oracle {

using thinville::GroupElement;
using thinville::PcGroup;
using Set = std::vector<bool>;  // indexed by PcGroup::index_of

class Table {
 public:
  explicit Table(const PcGroup& g) : g_(g), n_(g.order()), mul_(n_ * n_), inv_(n_) {
    elems_.reserve(n_);
    for (std::uint64_t i = 0; i < n_; ++i) elems_.push_back(g.from_index(i));
    for (std::uint64_t i = 0; i < n_; ++i)
      for (std::uint64_t j = 0; j < n_; ++j)
        mul_[i * n_ + j] = static_cast<std::uint32_t>(g.index_of(g.multiply(elems_[i], elems_[j])));
    for (std::uint64_t i = 0; i < n_; ++i)
      for (std::uint64_t j = 0; j < n_; ++j)
        if (mul_[i * n_ + j] == 0) inv_[i] = static_cast<std::uint32_t>(j);
  }

  std::uint64_t size() const { return n_; }
  std::uint32_t mul(std::uint64_t a, std::uint64_t b) const { return mul_[a * n_ + b]; }
  std::uint32_t inv(std::uint64_t a) const { return inv_[a]; }
  std::uint32_t conj(std::uint64_t a, std::uint64_t g) const { return mul(mul(inv(g), a), g); }
  std::uint32_t comm(std::uint64_t a, std::uint64_t b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  const GroupElement& element(std::uint64_t i) const { return elems_[i]; }
  std::uint64_t index(const GroupElement& x) const { return g_.index_of(x); }

  // Subgroup generated by gens, by breadth-first multiplication.
  Set generate(const std::vector<std::uint32_t>& gens) const {
    Set in(n_, false);
    std::vector<std::uint32_t> queue{0};
    in[0] = true;
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (auto s : gens) {
        const auto t = mul(queue[k], s);
        if (!in[t]) {
          in[t] = true;
          queue.push_back(t);
        }
      }
    return in;
  }

  Set normal_closure(std::uint32_t x) const {
    std::vector<std::uint32_t> conjugates;
    for (std::uint64_t g = 0; g < n_; ++g) conjugates.push_back(conj(x, g));
    std::sort(conjugates.begin(), conjugates.end());
    conjugates.erase(std::unique(conjugates.begin(), conjugates.end()), conjugates.end());
    return generate(conjugates);
  }

  static std::uint64_t count(const Set& s) { return static_cast<std::uint64_t>(std::count(s.begin(), s.end(), true)); }
  static bool subset(const Set& a, const Set& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] && !b[i]) return false;
    return true;
  }

  std::vector<std::uint32_t> members(const Set& s) const {
    std::vector<std::uint32_t> m;
    for (std::uint64_t i = 0; i < n_; ++i)
      if (s[i]) m.push_back(static_cast<std::uint32_t>(i));
    return m;
  }

  // N M for normal N, M, as a union of cosets x M.
  Set product(const Set& a, const Set& b) const {
    Set s(n_, false);
    const auto mb = members(b);
    for (auto x : members(a)) {
      if (s[x]) continue;
      for (auto y : mb) s[mul(x, y)] = true;
    }
    return s;
  }

  // Every normal subgroup: normal closures of single elements closed under products.
  std::vector<Set> normal_subgroups() const {
    std::set<Set> found;
    for (std::uint64_t x = 0; x < n_; ++x) found.insert(normal_closure(static_cast<std::uint32_t>(x)));
    std::vector<Set> all(found.begin(), found.end());
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        auto joined = product(all[i], all[j]);
        if (found.insert(joined).second) all.push_back(joined);
      }
    return all;
  }

  // gamma_1 = G, ..., ending with the trivial subgroup.
  std::vector<Set> lower_central_series() const {
    std::vector<Set> terms{Set(n_, true)};
    while (count(terms.back()) > 1) {
      std::vector<std::uint32_t> gens;
      for (auto a : members(terms.back()))
        for (std::uint64_t b = 0; b < n_; ++b) gens.push_back(comm(a, b));
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      auto next = generate(gens);
      if (next == terms.back()) break;
      terms.push_back(next);
    }
    return terms;
  }

  std::uint64_t order_of(std::uint32_t x) const {
    std::uint64_t k = 1;
    for (std::uint32_t y = x; y != 0; y = mul(y, x)) ++k;
    return k;
  }

  // The definition: non-cyclic, factors of order <= p^2, every normal
  // subgroup between two consecutive terms of the lower central series.
  bool is_thin(int p) const {
    for (std::uint64_t x = 0; x < n_; ++x)
      if (order_of(static_cast<std::uint32_t>(x)) == n_) return false;
    const auto lcs = lower_central_series();
    if (count(lcs.back()) != 1) return false;
    for (std::size_t i = 0; i + 1 < lcs.size(); ++i)
      if (count(lcs[i]) > count(lcs[i + 1]) * static_cast<std::uint64_t>(p * p)) return false;
    for (const auto& n : normal_subgroups()) {
      bool sandwiched = false;
      for (std::size_t i = 0; i + 1 < lcs.size() && !sandwiched; ++i)
        sandwiched = subset(lcs[i + 1], n) && subset(n, lcs[i]);
      if (!sandwiched) return false;
    }
    return true;
  }

  // Sigma(x, y) as an element set: every conjugate of <x>, <y>, <xy>.
  Set sigma(std::uint32_t x, std::uint32_t y) const {
    Set s(n_, false);
    for (std::uint32_t u : {x, y, mul(x, y)})
      for (std::uint64_t g = 0; g < n_; ++g) {
        const auto c = conj(u, g);
        std::uint32_t t = 0;
        do {
          s[t] = true;
          t = mul(t, c);
        } while (t != 0);
      }
    return s;
  }

  static bool meet_trivially(const Set& a, const Set& b) {
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i] && b[i]) return false;
    return true;
  }

 private:
  const PcGroup& g_;
  std::uint64_t n_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> inv_;
  std::vector<GroupElement> elems_;
};

// Exact binomial by the multiplicative formula in 128-bit arithmetic.
inline unsigned __int128 binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return r;
}

// sum_{k=1}^{p-1} binom(k, i) binom(k, j) mod p.
inline int cij_mod(int i, int j, int p) {
  unsigned __int128 s = 0;
  for (int k = 1; k < p; ++k) s += binom(k, i) * binom(k, j);
  return static_cast<int>(s % static_cast<unsigned>(p));
}

inline int pow_mod(long long b, long long e, int p) {
  long long r = 1;
  b = ((b % p) + p) % p;
  for (; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return static_cast<int>(r);
}

// Modular inverse by Fermat's little theorem.
inline int inv_mod(int a, int p) { return pow_mod(a, p - 2, p); }

inline bool is_square_mod(int a, int p) {
  for (int x = 1; x < p; ++x)
    if (x * x % p == ((a % p) + p) % p) return true;
  return false;
}

}  // namespace oracle
