#pragma once

#include <string>
#include <vector>

#include "stabkit/error.hpp"
#include "stabkit/grr/hilbert.hpp"
#include "stabkit/hn/abel.hpp"
#include "stabkit/ring/bigraded_ring.hpp"

namespace stabkit {

struct RingIdentity {
  std::string name;
  RingElement lhs;
  RingElement rhs;
  bool holds = false;
};

struct SlopeEquivalence {
  int n = 0;
  int r = 0;
  int m1 = 0;
  int m2 = 0;
  Rational t;  // m1 / (m2 n)
  std::vector<RingIdentity> identities;

  [[nodiscard]] bool holds() const {
    for (const auto& id : identities)
      if (!id.holds) return false;
    return true;
  }
};

namespace detail {

inline void require_polarisation(const BigradedRing& ring) {
  const RingElement h1 = ring.h1();
  const RingElement h2 = ring.h2();
  if (h1.is_zero() || !h1.has_bidegree(Bidegree::complex(1, 0)))
    throw Error("ring has no designated H1 of bidegree (1,0)");
  if (h2.is_zero() || !h2.has_bidegree(Bidegree::complex(0, 1)))
    throw Error("ring has no designated H2 of bidegree (0,1)");
}

}  // namespace detail

/// With t = m1/(m2 n), checks in the ring
///   H1^{n-1} H2^r + t r H1^n H2^{r-1} = (m1 H1 + m2 H2)^{n+r-1} / (C(n+r-1, r) m1^{n-1} m2^r)
///   H1^n H2^r                        = (m1 H1 + m2 H2)^{n+r}   / (C(n+r, r)   m1^n     m2^r)
inline SlopeEquivalence slope_equivalence(const RingPtr& ring, int m1, int m2) {
  if (m1 <= 0 || m2 <= 0) throw Error("m1 and m2 must be positive integers");
  detail::require_polarisation(*ring);
  const int n = ring->dim_x();
  const int r = ring->dim_s();
  const RingElement h1 = ring->h1();
  const RingElement h2 = ring->h2();
  const RingElement h = Rational(m1) * h1 + Rational(m2) * h2;

  SlopeEquivalence out;
  out.n = n;
  out.r = r;
  out.m1 = m1;
  out.m2 = m2;
  out.t = Rational(m1, static_cast<std::int64_t>(m2) * n);

  const RingElement lhs1 = power(h1, n - 1) * power(h2, r) + (out.t * Rational(r)) * power(h1, n) * power(h2, r - 1);
  const RingElement rhs1 =
      (binomial(n + r - 1, r) * power(Rational(m1), n - 1) * power(Rational(m2), r)).reciprocal() *
      power(h, n + r - 1);
  const RingElement lhs2 = power(h1, n) * power(h2, r);
  const RingElement rhs2 =
      (binomial(n + r, r) * power(Rational(m1), n) * power(Rational(m2), r)).reciprocal() * power(h, n + r);

  out.identities.push_back({"H1^(n-1) H2^r + t r H1^n H2^(r-1) = H^(n+r-1) / (C(n+r-1,r) m1^(n-1) m2^r)", lhs1, rhs1,
                            lhs1 == rhs1});
  out.identities.push_back({"H1^n H2^r = H^(n+r) / (C(n+r,r) m1^n m2^r)", lhs2, rhs2, lhs2 == rhs2});
  return out;
}

/// Affine comparison of the sigma_t slope of E with its classical slope for
/// H = m1 H1 + m2 H2 at t = m1/(m2 n):
///   mu_t(E) = scale * mu_H(E) + shift,
///   mu_H(E) = int H^{n+r-1} ch_1 / int H^{n+r} ch_0,
///   scale = (n+r) m1 / n,  shift = t r int H1^n H2^{r-1} td_1 / int H1^n H2^r.
struct SlopeComparison {
  Slope sigma_t;
  Slope classical;
  Rational scale;
  Rational shift;
  bool holds = false;
};

inline SlopeComparison compare_with_classical_slope(const SheafData& e, const ToddData& todd, int m1, int m2) {
  const SlopeEquivalence eq = slope_equivalence(e.ring, m1, m2);
  const BigradedRing& ring = *e.ring;
  const int n = eq.n;
  const int r = eq.r;
  const RingElement h = Rational(m1) * ring.h1() + Rational(m2) * ring.h2();

  SlopeComparison out;
  out.scale = Rational(n + r) * Rational(m1) / Rational(n);
  const Rational top = integrate(power(ring.h1(), n) * power(ring.h2(), r));
  out.shift = eq.t * Rational(r) * integrate(power(ring.h1(), n) * power(ring.h2(), r - 1) * todd.td_p[1]) / top;

  const CoeffVector c = coefficients(e, todd, Orientation::Standard);
  out.sigma_t = sigma_t_slope(c, eq.t);
  const Rational denom = integrate(power(h, n + r) * e.ch[0]);
  if (denom.is_zero()) {
    out.classical = Slope::infinity();
    out.holds = out.sigma_t.is_infinite();
  } else {
    out.classical = Slope(integrate(power(h, n + r - 1) * e.ch[1]) / denom);
    out.holds = !out.sigma_t.is_infinite() && out.sigma_t.value() == out.scale * out.classical.value() + out.shift;
  }
  return out;
}

}  // namespace stabkit
