#pragma once

#include <stdexcept>
#include <string_view>

#include "stabkit/exact/polynomial.hpp"

namespace stabkit {

/// Direction of a ray from the origin, standing in for e^{i*pi*phi}. Phases
/// are never materialised as real numbers; everything goes through exact
/// cross and dot products.
class RayDirection {
 public:
  explicit RayDirection(ComplexRational d) : d_(std::move(d)) {
    if (d_.is_zero()) throw std::invalid_argument("ray direction must be nonzero");
  }

  [[nodiscard]] const ComplexRational& value() const { return d_; }

  /// True when `z` is a positive real multiple of this direction.
  [[nodiscard]] bool contains(const ComplexRational& z) const {
    return cross(d_, z).is_zero() && dot(d_, z).sign() > 0;
  }

  [[nodiscard]] bool equivalent(const RayDirection& other) const { return contains(other.d_); }

 private:
  ComplexRational d_;
};

enum class Side { Left, On, Right, Zero };

inline std::string_view to_string(Side side) {
  switch (side) {
    case Side::Left: return "left";
    case Side::On: return "on";
    case Side::Right: return "right";
    case Side::Zero: return "zero";
  }
  return "?";
}

/// Side of the line through `d` on which p(n) lies for all n >> 0.
///
/// The first coefficient (from the top) with nonzero cross product against d
/// decides. When every coefficient is parallel to d the polynomial lies on the
/// line itself: the ray through d is On, the opposite ray counts as Left.
inline Side side_of_ray(const ComplexPolynomial& p, const RayDirection& d) {
  if (p.is_zero()) return Side::Zero;
  for (int k = p.degree(); k >= 0; --k) {
    const int s = cross(d.value(), p.coefficient(k)).sign();
    if (s > 0) return Side::Left;
    if (s < 0) return Side::Right;
  }
  return dot(d.value(), p.leading()).sign() > 0 ? Side::On : Side::Left;
}

/// Polynomial-level slice membership: Arg p(n) tends to Arg d from below or
/// sits on the ray, for n >> 0.
inline bool in_slice(const ComplexPolynomial& p, const RayDirection& d) {
  if (p.is_zero()) throw std::invalid_argument("in_slice: zero polynomial belongs to every slice");
  if (!d.contains(p.leading())) return false;
  const Side side = side_of_ray(p, d);
  return side == Side::On || side == Side::Right;
}

}  // namespace stabkit
