#pragma once

#include <string>

#include "stabkit/ring/bigraded_ring.hpp"

namespace stabkit {

namespace detail {

inline std::string monomial_name(const std::string& a_var, int a, const std::string& b_var, int b) {
  if (a == 0 && b == 0) return "1";
  auto part = [](const std::string& var, int e) {
    if (e == 0) return std::string();
    return e == 1 ? var : var + "^" + std::to_string(e);
  };
  return part(a_var, a) + part(b_var, b);
}

}  // namespace detail

/// P^n x P^r with hyperplane classes h1, h2: basis h1^a h2^b, integral of
/// h1^n h2^r equal to 1, vol_s = 1.
inline RingSpec proj_product_spec(int n, int r) {
  if (n <= 0 || r <= 0)
    throw InputError("ring", "proj_product needs positive dimensions (got n=" + std::to_string(n) +
                                 ", r=" + std::to_string(r) + ")");
  RingSpec spec;
  spec.dim_x = n;
  spec.dim_s = r;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= r; ++b) spec.basis.push_back({detail::monomial_name("h1", a, "h2", b), Bidegree::complex(a, b)});
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= r; ++b)
      for (int c = 0; c <= n; ++c)
        for (int d = 0; d <= r; ++d) {
          RingSpec::Product p{detail::monomial_name("h1", a, "h2", b), detail::monomial_name("h1", c, "h2", d), {}};
          if (a + c <= n && b + d <= r) p.result.emplace_back(detail::monomial_name("h1", a + c, "h2", b + d), 1);
          spec.products.push_back(std::move(p));
        }
  spec.integrals = {{detail::monomial_name("h1", n, "h2", r), Rational(1)}};
  spec.h1 = {{"h1", Rational(1)}};
  spec.h2 = {{"h2", Rational(1)}};
  spec.vol_s = Rational(1);
  return spec;
}

inline RingPtr proj_product(int n, int r) { return BigradedRing::build(proj_product_spec(n, r)); }

struct CurveProductParams {
  int genus_x = 0;
  Rational delta_sq = Rational(0);
  Rational deg_h1 = Rational(1);
  Rational deg_h2 = Rational(1);
};

/// Curve X times an elliptic curve S. Basis {1, f1, f2, pt, delta}: f1 is the
/// fibre class pulled back from a point of X, f2 the class pulled back from a
/// point of S, delta the whole H^1 (x) H^1 Kunneth block modelled as a single
/// class with delta^2 = delta_sq * pt.
inline RingSpec curve_product_spec(const CurveProductParams& params) {
  if (params.delta_sq.sign() > 0)
    throw InputError("ring.delta_sq", "delta^2 must be <= 0 (Hodge index), got " + params.delta_sq.str());
  if (params.deg_h1.sign() <= 0) throw InputError("ring.deg_h1", "deg_h1 must be positive");
  if (params.deg_h2.sign() <= 0) throw InputError("ring.deg_h2", "deg_h2 must be positive");
  if (params.genus_x < 0) throw InputError("ring.g_x", "genus must be nonnegative");
  RingSpec spec;
  spec.dim_x = 1;
  spec.dim_s = 1;
  spec.basis = {{"1", Bidegree::complex(0, 0)},
                {"f1", Bidegree::complex(1, 0)},
                {"f2", Bidegree::complex(0, 1)},
                {"pt", Bidegree::complex(1, 1)},
                {"delta", Bidegree{1, 1}}};
  const char* nonunit[] = {"f1", "f2", "pt", "delta"};
  for (const char* x : nonunit)
    for (const char* y : nonunit) spec.products.push_back({x, y, {}});
  for (auto& p : spec.products) {
    if ((p.x == "f1" && p.y == "f2") || (p.x == "f2" && p.y == "f1")) p.result = {{"pt", Rational(1)}};
    if (p.x == "delta" && p.y == "delta" && !params.delta_sq.is_zero()) p.result = {{"pt", params.delta_sq}};
  }
  spec.integrals = {{"pt", Rational(1)}};
  spec.h1 = {{"f1", params.deg_h1}};
  spec.h2 = {{"f2", params.deg_h2}};
  spec.vol_s = params.deg_h2;
  return spec;
}

inline RingPtr curve_product(const CurveProductParams& params) {
  return BigradedRing::build(curve_product_spec(params));
}

struct CurveTimesAbelianParams {
  int genus_x = 0;
  int dim_a = 1;
  Rational deg_h1 = Rational(1);
  /// Integral of H2^dim_a over the abelian factor.
  Rational vol_a = Rational(1);
};

/// Curve X times an abelian variety A of dimension dim_a, keeping only the
/// subring generated by the fibre class f1 and the polarisation h2.
inline RingSpec curve_times_abelian_spec(const CurveTimesAbelianParams& params) {
  if (params.dim_a <= 0) throw InputError("ring.dim_a", "abelian factor must have positive dimension");
  if (params.deg_h1.sign() <= 0) throw InputError("ring.deg_h1", "deg_h1 must be positive");
  if (params.vol_a.sign() <= 0) throw InputError("ring.vol_a", "vol_a must be positive");
  if (params.genus_x < 0) throw InputError("ring.g_x", "genus must be nonnegative");
  RingSpec spec;
  spec.dim_x = 1;
  spec.dim_s = params.dim_a;
  const int r = params.dim_a;
  for (int e = 0; e <= 1; ++e)
    for (int b = 0; b <= r; ++b) spec.basis.push_back({detail::monomial_name("f1", e, "h2", b), Bidegree::complex(e, b)});
  for (int e = 0; e <= 1; ++e)
    for (int b = 0; b <= r; ++b)
      for (int e2 = 0; e2 <= 1; ++e2)
        for (int b2 = 0; b2 <= r; ++b2) {
          RingSpec::Product p{detail::monomial_name("f1", e, "h2", b), detail::monomial_name("f1", e2, "h2", b2), {}};
          if (e + e2 <= 1 && b + b2 <= r) p.result.emplace_back(detail::monomial_name("f1", e + e2, "h2", b + b2), 1);
          spec.products.push_back(std::move(p));
        }
  spec.integrals = {{detail::monomial_name("f1", 1, "h2", r), params.vol_a}};
  spec.h1 = {{"f1", params.deg_h1}};
  spec.h2 = {{"h2", Rational(1)}};
  spec.vol_s = params.vol_a;
  return spec;
}

inline RingPtr curve_times_abelian(const CurveTimesAbelianParams& params) {
  return BigradedRing::build(curve_times_abelian_spec(params));
}

}  // namespace stabkit
