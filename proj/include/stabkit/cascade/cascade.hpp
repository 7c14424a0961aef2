#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stabkit/exact/rational.hpp"
#include "stabkit/grr/hilbert.hpp"

namespace stabkit {

enum class VerdictStatus { Holds, HoldsWithEquality, Violated, Vacuous };

inline std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Holds: return "holds";
    case VerdictStatus::HoldsWithEquality: return "holds_with_equality";
    case VerdictStatus::Violated: return "violated";
    case VerdictStatus::Vacuous: return "vacuous";
  }
  return "?";
}

/// The sign condition a trail entry was tested against.
enum class Requirement {
  NonNegative,  // >= 0
  NonPositive,  // <= 0
  Negative,     // < 0
  Vanishes,     // == 0, recorded only to justify a vacuous verdict
};

inline std::string_view to_string(Requirement r) {
  switch (r) {
    case Requirement::NonNegative: return ">= 0";
    case Requirement::NonPositive: return "<= 0";
    case Requirement::Negative: return "< 0";
    case Requirement::Vanishes: return "== 0";
  }
  return "?";
}

struct TrailEntry {
  std::string quantity;
  int index = 0;
  Rational value;
  Requirement requirement = Requirement::NonNegative;

  [[nodiscard]] bool satisfied() const {
    const int s = value.sign();
    switch (requirement) {
      case Requirement::NonNegative: return s >= 0;
      case Requirement::NonPositive: return s <= 0;
      case Requirement::Negative: return s < 0;
      case Requirement::Vanishes: return s == 0;
    }
    return false;
  }
  /// Satisfied with room to spare, which ends a cascade.
  [[nodiscard]] bool strict() const { return satisfied() && !value.is_zero(); }
};

struct CascadeVerdict {
  VerdictStatus status = VerdictStatus::Vacuous;
  /// Number of exactly-vanishing quantities when status is HoldsWithEquality.
  int depth = 0;
  /// Set when status is Violated.
  std::optional<TrailEntry> offending;
  std::vector<TrailEntry> trail;

  [[nodiscard]] bool violated() const { return status == VerdictStatus::Violated; }
};

/// Recomputes a verdict from its trail alone.
inline CascadeVerdict replay_trail(const std::vector<TrailEntry>& trail) {
  CascadeVerdict v;
  v.trail = trail;
  if (!trail.empty() && trail.front().requirement == Requirement::Vanishes) {
    v.status = VerdictStatus::Vacuous;
    return v;
  }
  bool strict = false;
  for (const auto& e : trail) {
    if (!e.satisfied()) {
      v.status = VerdictStatus::Violated;
      v.offending = e;
      return v;
    }
    strict = strict || e.strict();
  }
  if (strict) {
    v.status = VerdictStatus::Holds;
  } else {
    v.status = VerdictStatus::HoldsWithEquality;
    v.depth = static_cast<int>(trail.size());
  }
  return v;
}

/// Linear positivity cascade over b_r, then the pairs (a_k, b_{k-1}) from the
/// top, then a_0.
///
/// b_r >= 0 is always required. While every quantity checked so far vanishes,
/// the next pair must satisfy a_k <= 0 and b_{k-1} >= 0; the walk ends after
/// the first check (or pair) containing a strict inequality. If everything
/// down to b_0 vanishes, a_0 <= 0 is required, tightened to a_0 < 0 when
/// `genuine_stability` is set.
inline CascadeVerdict linear_cascade(const CoeffVector& c, bool genuine_stability = false) {
  const int r = c.top;
  std::vector<TrailEntry> trail;
  auto a = [&](int k) { return c.a[static_cast<std::size_t>(k)]; };
  auto b = [&](int k) { return c.b[static_cast<std::size_t>(k)]; };
  auto finish = [&]() { return replay_trail(trail); };

  trail.push_back({"b", r, b(r), Requirement::NonNegative});
  if (!trail.back().satisfied() || trail.back().strict()) return finish();

  for (int k = r; k >= 1; --k) {
    trail.push_back({"a", k, a(k), Requirement::NonPositive});
    if (!trail.back().satisfied()) return finish();
    trail.push_back({"b", k - 1, b(k - 1), Requirement::NonNegative});
    if (!trail.back().satisfied()) return finish();
    if (trail[trail.size() - 2].strict() || trail.back().strict()) return finish();
  }
  trail.push_back({"a", 0, a(0), genuine_stability ? Requirement::Negative : Requirement::NonPositive});
  return finish();
}

/// Quadratic cascade on D_i = b_r a_i - b_i a_r, i = r-1 down to 0.
///
/// D_{r-1} >= 0 is required, and each further D_{i-1} >= 0 only while all
/// previous D vanish. Vacuous when a_r = b_r = 0.
inline CascadeVerdict quadratic_cascade(const CoeffVector& c) {
  const int r = c.top;
  const Rational& ar = c.a[static_cast<std::size_t>(r)];
  const Rational& br = c.b[static_cast<std::size_t>(r)];
  std::vector<TrailEntry> trail;
  if (ar.is_zero() && br.is_zero()) {
    trail.push_back({"a", r, ar, Requirement::Vanishes});
    trail.push_back({"b", r, br, Requirement::Vanishes});
    return replay_trail(trail);
  }
  for (int i = r - 1; i >= 0; --i) {
    const Rational d = br * c.a[static_cast<std::size_t>(i)] - c.b[static_cast<std::size_t>(i)] * ar;
    trail.push_back({"D", i, d, Requirement::NonNegative});
    if (!d.is_zero()) break;
  }
  return replay_trail(trail);
}

/// D_i = b_r a_i - b_i a_r for every i < r, top first.
inline std::vector<Rational> quadratic_quantities(const CoeffVector& c) {
  const std::size_t r = static_cast<std::size_t>(c.top);
  std::vector<Rational> out;
  for (std::size_t i = r; i-- > 0;) out.push_back(c.b[r] * c.a[i] - c.b[i] * c.a[r]);
  return out;
}

}  // namespace stabkit
