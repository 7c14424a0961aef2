#pragma once

// Definitional Harder-Narasimhan search on a charged poset, in plain int64
// arithmetic: enumerate every chain of down-sets 0 = F_0 < F_1 < ... < F_m = E
// whose factors are semistable (mu(D/F_{k-1}) <= mu(F_k/F_{k-1}) for every
// down-set strictly between) with strictly decreasing slopes. The HN
// property says there is exactly one such chain.

#include <cstdint>
#include <vector>

namespace oracle {

struct IntCharge {
  std::int64_t re = 0;
  std::int64_t im = 0;
};

inline IntCharge operator+(IntCharge a, IntCharge b) { return {a.re + b.re, a.im + b.im}; }
inline IntCharge operator-(IntCharge a, IntCharge b) { return {a.re - b.re, a.im - b.im}; }

/// Sign of mu(a) - mu(b), where mu = -re/im and +infinity when im = 0.
inline int slope_cmp(IntCharge a, IntCharge b) {
  const bool ia = a.im == 0;
  const bool ib = b.im == 0;
  if (ia || ib) return static_cast<int>(ia) - static_cast<int>(ib);
  // -a.re/a.im - (-b.re/b.im) has the sign of b.re*a.im - a.re*b.im.
  const std::int64_t d = b.re * a.im - a.re * b.im;
  return (d > 0) - (d < 0);
}

struct IntPoset {
  std::vector<std::uint64_t> below;  // strict lower sets (need not be closed)
  std::vector<IntCharge> charge;
};

inline std::vector<std::uint64_t> int_down_sets(const IntPoset& p) {
  const std::size_t n = p.below.size();
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    bool closed = true;
    for (std::size_t i = 0; i < n && closed; ++i)
      if ((m >> i & 1U) && (p.below[i] & ~m)) closed = false;
    if (closed) out.push_back(m);
  }
  return out;
}

inline IntCharge charge_of(const IntPoset& p, std::uint64_t m) {
  IntCharge z;
  for (std::size_t i = 0; i < p.charge.size(); ++i)
    if (m >> i & 1U) z = z + p.charge[i];
  return z;
}

/// Every chain (listed as F_1, ..., F_m) satisfying the HN conditions.
inline std::vector<std::vector<std::uint64_t>> hn_chains(const IntPoset& p) {
  const std::vector<std::uint64_t> downs = int_down_sets(p);
  std::vector<IntCharge> z(downs.size());
  for (std::size_t i = 0; i < downs.size(); ++i) z[i] = charge_of(p, downs[i]);
  const std::uint64_t full = downs.back();

  std::vector<std::vector<std::uint64_t>> found;
  std::vector<std::uint64_t> chain;
  auto semistable = [&](std::size_t f, std::size_t g) {
    const IntCharge whole = z[g] - z[f];
    for (std::size_t d = 0; d < downs.size(); ++d) {
      if (d == f || d == g) continue;
      if ((downs[d] & downs[f]) != downs[f] || (downs[d] & ~downs[g]) != 0) continue;
      if (slope_cmp(z[d] - z[f], whole) > 0) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self, std::size_t f, const IntCharge* prev) -> void {
    if (downs[f] == full) {
      found.push_back(chain);
      return;
    }
    for (std::size_t g = 0; g < downs.size(); ++g) {
      if (g == f || (downs[g] & downs[f]) != downs[f]) continue;
      const IntCharge q = z[g] - z[f];
      if (prev != nullptr && slope_cmp(q, *prev) >= 0) continue;
      if (!semistable(f, g)) continue;
      chain.push_back(downs[g]);
      self(self, g, &q);
      chain.pop_back();
    }
  };
  dfs(dfs, 0, nullptr);
  return found;
}

}  // namespace oracle
