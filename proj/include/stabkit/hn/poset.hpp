#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabkit/error.hpp"
#include "stabkit/hn/slope.hpp"

namespace stabkit {

using Mask = std::uint64_t;

/// Finite model of an object: elements carrying additive charges, with a
/// strict partial order generated by cover pairs (lower, upper). Subobjects
/// are exactly the down-closed subsets; the charge of a subobject is the sum
/// of its element charges.
class ChargedPoset {
 public:
  static constexpr std::size_t kMaxElements = 63;

  struct Element {
    std::string id;
    ComplexRational charge;
  };

  ChargedPoset(std::vector<Element> elements, const std::vector<std::pair<std::string, std::string>>& covers,
               bool strict_charges = false)
      : elements_(std::move(elements)) {
    if (elements_.empty()) throw InputError("elements", "poset has no elements");
    if (elements_.size() > kMaxElements)
      throw InputError("elements", "at most " + std::to_string(kMaxElements) + " elements supported");
    // Sorted (id, position) pairs; posets are small, so this beats a map.
    std::vector<std::pair<std::string_view, std::size_t>> index;
    index.reserve(elements_.size());
    auto find = [&index](std::string_view id) {
      auto it = std::lower_bound(index.begin(), index.end(), id,
                                 [](const auto& entry, std::string_view key) { return entry.first < key; });
      return it != index.end() && it->first == id ? it : index.end();
    };
    auto element_path = [](std::size_t i) { return "elements[" + std::to_string(i) + "]"; };
    auto cover_path = [](std::size_t c) { return "covers[" + std::to_string(c) + "]"; };
    for (std::size_t i = 0; i < elements_.size(); ++i) index.emplace_back(elements_[i].id, i);
    std::sort(index.begin(), index.end());
    for (std::size_t k = 1; k < index.size(); ++k)
      if (index[k].first == index[k - 1].first)
        throw InputError(element_path(index[k].second) + ".id",
                         "duplicate element id \"" + std::string(index[k].first) + "\"");
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (!is_valid_charge(elements_[i].charge, strict_charges))
        throw InputError(element_path(i), "charge " + elements_[i].charge.str() + " is not a valid central charge");
    }
    lower_.assign(elements_.size(), 0);
    for (std::size_t c = 0; c < covers.size(); ++c) {
      auto lo = find(covers[c].first);
      auto hi = find(covers[c].second);
      if (lo == index.end()) throw InputError(cover_path(c) + "[0]", "unknown element \"" + covers[c].first + "\"");
      if (hi == index.end()) throw InputError(cover_path(c) + "[1]", "unknown element \"" + covers[c].second + "\"");
      if (lo->second == hi->second) throw InputError(cover_path(c), "element cannot cover itself");
      lower_[hi->second] |= Mask{1} << lo->second;
    }
    order_ = topological_order();
  }

  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] const std::vector<Element>& elements() const { return elements_; }
  [[nodiscard]] Mask full_mask() const { return size() == 64 ? ~Mask{0} : (Mask{1} << size()) - 1; }
  /// Immediate lower covers of element i.
  [[nodiscard]] Mask lower_covers(std::size_t i) const { return lower_[i]; }
  /// Elements listed so that every element follows everything below it.
  [[nodiscard]] const std::vector<std::size_t>& linear_extension() const { return order_; }

  [[nodiscard]] bool is_down_closed(Mask m) const {
    for (std::size_t i = 0; i < size(); ++i)
      if ((m >> i & 1) && (lower_[i] & ~m)) return false;
    return true;
  }

  [[nodiscard]] ComplexRational charge_of(Mask m) const {
    ComplexRational z;
    for (std::size_t i = 0; i < size(); ++i)
      if (m >> i & 1) z += elements_[i].charge;
    return z;
  }

  [[nodiscard]] ComplexRational total_charge() const { return charge_of(full_mask()); }

  [[nodiscard]] std::vector<std::string> ids(Mask m) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (m >> i & 1) out.push_back(elements_[i].id);
    return out;
  }

 private:
  std::vector<std::size_t> topological_order() const {
    std::vector<std::size_t> order;
    Mask placed = 0;
    while (order.size() < size()) {
      bool progressed = false;
      for (std::size_t i = 0; i < size(); ++i) {
        if ((placed >> i & 1) || (lower_[i] & ~placed)) continue;
        order.push_back(i);
        placed |= Mask{1} << i;
        progressed = true;
      }
      if (!progressed) throw InputError("covers", "cover relation contains a cycle");
    }
    return order;
  }

  std::vector<Element> elements_;
  std::vector<Mask> lower_;
  std::vector<std::size_t> order_;
};

struct DownSet {
  Mask members = 0;
  ComplexRational charge;
};

/// Every down-closed subset, including the empty one, in a deterministic order.
inline std::vector<DownSet> down_sets(const ChargedPoset& poset) {
  std::vector<DownSet> out;
  const auto& order = poset.linear_extension();
  // Depth-first over the linear extension: an element may join only once its
  // lower covers are in, which is decided before it is reached.
  struct Frame {
    std::size_t depth;
    Mask members;
    ComplexRational charge;
  };
  std::vector<Frame> stack;
  stack.reserve(order.size() + 1);
  stack.push_back({0, 0, {}});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.depth == order.size()) {
      out.push_back({f.members, std::move(f.charge)});
      continue;
    }
    const std::size_t e = order[f.depth];
    if ((poset.lower_covers(e) & ~f.members) == 0)
      stack.push_back({f.depth + 1, f.members | (Mask{1} << e), f.charge + poset.elements()[e].charge});
    stack.push_back({f.depth + 1, f.members, std::move(f.charge)});
  }
  return out;
}

struct HNFactor {
  Mask members = 0;  // elements of E_k \ E_{k-1}
  std::vector<std::string> ids;
  ComplexRational charge;
  Slope slope;
};

struct HNFiltration {
  std::vector<HNFactor> factors;
  /// Z(E_1), ..., Z(E_m); the last entry is the total charge.
  std::vector<ComplexRational> partial_sums;

  [[nodiscard]] bool semistable() const { return factors.size() == 1; }
};

/// Harder-Narasimhan filtration by repeated maximal destabilisers: among the
/// down-sets strictly containing the current step, take the one whose quotient
/// has maximal slope, breaking ties by maximal cardinality.
inline HNFiltration hn_filtration(const ChargedPoset& poset, const std::vector<DownSet>& downs) {
  HNFiltration out;
  Mask taken = 0;
  ComplexRational base;
  while (taken != poset.full_mask()) {
    const DownSet* best = nullptr;
    ComplexRational best_z;
    int best_card = -1;
    for (const auto& d : downs) {
      if ((d.members & taken) != taken || d.members == taken) continue;
      const ComplexRational z = d.charge - base;
      const int card = std::popcount(d.members);
      if (best != nullptr) {
        const auto cmp = compare_slopes(z, best_z);
        if (cmp < 0 || (cmp == 0 && card <= best_card)) continue;
      }
      best = &d;
      best_z = z;
      best_card = card;
    }
    const Mask step = best->members & ~taken;
    out.factors.push_back({step, poset.ids(step), best_z, slope_of(best_z)});
    out.partial_sums.push_back(best->charge);
    taken = best->members;
    base = best->charge;
  }
  return out;
}

inline HNFiltration hn_filtration(const ChargedPoset& poset) { return hn_filtration(poset, down_sets(poset)); }

}  // namespace stabkit
