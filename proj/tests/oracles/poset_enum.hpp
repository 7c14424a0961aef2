#pragma once

// Finite posets up to isomorphism, built by adjoining a new maximal element
// above every down-set of each smaller poset and deduplicating by a
// canonical form (lexicographically least relation matrix over all
// relabellings).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

struct SmallPoset {
  int n = 0;
  // below[i]: bitmask of the elements strictly below i (transitively closed).
  std::vector<std::uint32_t> below;
};

inline std::uint64_t relation_code(const SmallPoset& p, const std::vector<int>& perm) {
  // perm[new] = old
  std::uint64_t code = 0;
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      code <<= 1;
      if (p.below[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] >> perm[static_cast<std::size_t>(j)] & 1U)
        code |= 1;
    }
  return code;
}

inline std::uint64_t canonical_code(const SmallPoset& p) {
  std::vector<int> perm(static_cast<std::size_t>(p.n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, relation_code(p, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<std::uint32_t> down_sets_of(const SmallPoset& p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1U << p.n); ++m) {
    bool closed = true;
    for (int i = 0; i < p.n && closed; ++i)
      if ((m >> i & 1U) && (p.below[static_cast<std::size_t>(i)] & ~m)) closed = false;
    if (closed) out.push_back(m);
  }
  return out;
}

/// All posets on n elements (n <= 6 keeps this instant), one per
/// isomorphism class.
inline std::vector<SmallPoset> posets_up_to_iso(int n) {
  std::vector<SmallPoset> level{SmallPoset{0, {}}};
  for (int size = 1; size <= n; ++size) {
    std::set<std::uint64_t> seen;
    std::vector<SmallPoset> next;
    for (const auto& p : level)
      for (std::uint32_t d : down_sets_of(p)) {
        SmallPoset q = p;
        q.n = size;
        q.below.push_back(d);
        if (seen.insert(canonical_code(q)).second) next.push_back(std::move(q));
      }
    level = std::move(next);
  }
  return level;
}

/// Relabellings fixing the order relation, as perm[new] = old.
inline std::vector<std::vector<int>> automorphisms(const SmallPoset& p) {
  std::vector<int> perm(static_cast<std::size_t>(p.n));
  std::iota(perm.begin(), perm.end(), 0);
  const std::uint64_t base = relation_code(p, perm);
  std::vector<std::vector<int>> out;
  do {
    if (relation_code(p, perm) == base) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Calls visit(colour) once per colouring of p by `alphabet` values up to
/// automorphisms of p: a colouring is kept when its base-`alphabet` code is
/// minimal over its orbit.
template <class Visit>
inline void colourings_up_to_iso(const SmallPoset& p, int alphabet, Visit&& visit) {
  const auto autos = automorphisms(p);
  std::int64_t total = 1;
  for (int i = 0; i < p.n; ++i) total *= alphabet;
  std::vector<int> colour(static_cast<std::size_t>(p.n));
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (int i = 0; i < p.n; ++i) {
      colour[static_cast<std::size_t>(i)] = static_cast<int>(c % alphabet);
      c /= alphabet;
    }
    bool minimal = true;
    for (const auto& g : autos) {
      std::int64_t image = 0;
      for (int i = p.n - 1; i >= 0; --i) image = image * alphabet + colour[static_cast<std::size_t>(g[static_cast<std::size_t>(i)])];
      if (image < code) {
        minimal = false;
        break;
      }
    }
    if (minimal) visit(colour);
  }
}

}  // namespace oracle
