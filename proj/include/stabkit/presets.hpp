#pragma once

#include <string>
#include <variant>
#include <vector>

#include "stabkit/grr/todd.hpp"
#include "stabkit/ring/presets.hpp"

namespace stabkit {

/// A preset ring together with the Todd data of its two projections.
struct Preset {
  RingPtr ring;
  ToddData todd;
  /// Volume of the first factor; only needed when swapping the factors.
  Rational vol_x;
};

namespace detail {

/// Todd classes of P^m with hyperplane class h, from c(T) = (1+h)^{m+1}.
inline std::vector<RingElement> projective_space_todd(const BigradedRing& ring, const RingElement& h, int m) {
  std::vector<RingElement> chern;
  for (int j = 1; j <= m; ++j) chern.push_back(binomial(m + 1, j) * power(h, j));
  std::vector<RingElement> td = todd_from_chern(ring, chern);
  td.resize(static_cast<std::size_t>(m + 1), ring.zero());
  return td;
}

/// Todd classes of a curve of genus g with point class `point`: [1, (1-g) point].
inline std::vector<RingElement> curve_todd(const BigradedRing& ring, const RingElement& point, int genus) {
  return {ring.one(), Rational(1 - genus) * point};
}

inline std::vector<RingElement> trivial_todd(const BigradedRing& ring, int dim) {
  std::vector<RingElement> td{ring.one()};
  for (int i = 1; i <= dim; ++i) td.push_back(ring.zero());
  return td;
}

}  // namespace detail

inline Preset proj_product_preset(int n, int r) {
  RingPtr ring = proj_product(n, r);
  ToddData todd{detail::projective_space_todd(*ring, ring->basis_element("h2"), r),
                detail::projective_space_todd(*ring, ring->basis_element("h1"), n)};
  return {ring, std::move(todd), Rational(1)};
}

/// Curve of genus g_X times an elliptic curve: T_p is trivial, so td_p = [1, 0].
inline Preset curve_product_preset(const CurveProductParams& params) {
  RingPtr ring = curve_product(params);
  ToddData todd{detail::trivial_todd(*ring, 1), detail::curve_todd(*ring, ring->basis_element("f1"), params.genus_x)};
  return {ring, std::move(todd), params.deg_h1};
}

/// Curve times an abelian variety: td_p is trivial in every degree.
inline Preset curve_times_abelian_preset(const CurveTimesAbelianParams& params) {
  RingPtr ring = curve_times_abelian(params);
  ToddData todd{detail::trivial_todd(*ring, params.dim_a),
                detail::curve_todd(*ring, ring->basis_element("f1"), params.genus_x)};
  return {ring, std::move(todd), params.deg_h1};
}

struct ProjProductParams {
  int n = 1;
  int r = 1;
};

using PresetParams = std::variant<ProjProductParams, CurveProductParams, CurveTimesAbelianParams>;

inline Preset build_preset(const PresetParams& params) {
  return std::visit(
      [](const auto& p) -> Preset {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ProjProductParams>) return proj_product_preset(p.n, p.r);
        else if constexpr (std::is_same_v<T, CurveProductParams>) return curve_product_preset(p);
        else return curve_times_abelian_preset(p);
      },
      params);
}

}  // namespace stabkit
