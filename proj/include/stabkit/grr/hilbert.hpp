#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stabkit/exact/polynomial.hpp"
#include "stabkit/grr/todd.hpp"
#include "stabkit/ring/bigraded_ring.hpp"

namespace stabkit {

enum class Orientation {
  Standard,  // twist along S, push forward to X
  Primed,    // twist along X, push forward to S
};

inline std::string_view to_string(Orientation o) { return o == Orientation::Standard ? "standard" : "primed"; }

/// Chern character ch_0 .. ch_{n+r} of an object on X x S.
struct SheafData {
  RingPtr ring;
  std::vector<RingElement> ch;
  std::string name;
};

/// Pads `ch` to length n+r+1 and checks that ch_j has pure total degree j.
inline SheafData make_sheaf(const RingPtr& ring, std::vector<RingElement> ch, std::string name = {},
                            const std::string& path = "ch") {
  const std::size_t length = static_cast<std::size_t>(ring->dim_x() + ring->dim_s() + 1);
  if (ch.size() > length)
    throw InputError(path, "at most " + std::to_string(length) + " Chern character components, got " +
                               std::to_string(ch.size()));
  for (std::size_t j = 0; j < ch.size(); ++j) {
    if (ch[j].ring_ptr() != ring) throw InputError(path + "[" + std::to_string(j) + "]", "ring mismatch");
    if (!ch[j].has_total_degree(static_cast<int>(j)))
      throw InputError(path + "[" + std::to_string(j) + "]", "ch_" + std::to_string(j) + " must have total degree " +
                                                                 std::to_string(j) + ", got " + ch[j].str());
  }
  while (ch.size() < length) ch.push_back(ring->zero());
  return {ring, std::move(ch), std::move(name)};
}

/// Componentwise sum of Chern characters (the class of E (+) F).
inline SheafData direct_sum(const SheafData& e, const SheafData& f) {
  if (e.ring != f.ring) throw Error("ring mismatch in direct_sum");
  std::vector<RingElement> ch;
  for (std::size_t j = 0; j < e.ch.size(); ++j) ch.push_back(e.ch[j] + f.ch[j]);
  return {e.ring, std::move(ch), e.name + "+" + f.name};
}

/// The arrays {a_k}, {b_k} with L(n) = sum_k (a_k + i b_k) n^k. `top` is r in
/// the standard orientation and n (= dim X) in the primed one.
struct CoeffVector {
  int top = 0;
  std::vector<Rational> a;
  std::vector<Rational> b;
  Orientation orientation = Orientation::Standard;

  CoeffVector() = default;
  CoeffVector(std::vector<Rational> a_values, std::vector<Rational> b_values,
              Orientation o = Orientation::Standard)
      : top(static_cast<int>(a_values.size()) - 1), a(std::move(a_values)), b(std::move(b_values)), orientation(o) {
    if (a.size() != b.size() || a.empty()) throw Error("coefficient arrays must be nonempty and of equal length");
  }

  /// Coefficient vector read off a polynomial of degree <= top.
  static CoeffVector from_polynomial(const ComplexPolynomial& p, int top, Orientation o = Orientation::Standard) {
    if (p.degree() > top) throw Error("polynomial degree exceeds the coefficient range");
    std::vector<Rational> a, b;
    for (int k = 0; k <= top; ++k) {
      a.push_back(p.coefficient(k).re);
      b.push_back(p.coefficient(k).im);
    }
    return {std::move(a), std::move(b), o};
  }

  [[nodiscard]] ComplexPolynomial polynomial() const {
    std::vector<ComplexRational> c;
    for (int k = 0; k <= top; ++k) c.emplace_back(a[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k)]);
    return ComplexPolynomial(std::move(c));
  }

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;
};

namespace detail {

inline void check_sheaf_todd(const SheafData& e, const ToddData& todd) {
  if (!e.ring) throw Error("sheaf without a ring");
  for (const auto& c : e.ch)
    if (c.ring_ptr() != e.ring) throw Error("ring mismatch: Chern character from another ring");
  for (const auto* list : {&todd.td_p, &todd.td_q})
    for (const auto& t : *list)
      if (t.ring_ptr() != e.ring) throw Error("ring mismatch: Todd data and sheaf live on different rings");
  if (static_cast<int>(todd.td_p.size()) != e.ring->dim_s() + 1 ||
      static_cast<int>(todd.td_q.size()) != e.ring->dim_x() + 1)
    throw Error("Todd data has the wrong length for this ring");
}

inline RingElement sum_of(const std::vector<RingElement>& parts, const RingPtr& ring) {
  RingElement total = ring->zero();
  for (const auto& p : parts) total += p;
  return total;
}

}  // namespace detail

/// Complexified Hilbert polynomial L_E(n) = Z(Rp_*(E (x) q^*O(n))).
///
/// Standard orientation: -int H1^{n-1} ch(E) e^{nH2} td_p + i int H1^n ch(E) e^{nH2} td_p.
/// The exponential is a finite sum because H2^{r+1} = 0. The primed
/// orientation exchanges the roles of the factors and uses td_q.
inline ComplexPolynomial hilbert_poly(const SheafData& e, const ToddData& todd,
                                      Orientation orientation = Orientation::Standard) {
  detail::check_sheaf_todd(e, todd);
  const BigradedRing& ring = *e.ring;
  const bool standard = orientation == Orientation::Standard;
  const int base_dim = standard ? ring.dim_x() : ring.dim_s();
  const int fibre_dim = standard ? ring.dim_s() : ring.dim_x();
  const RingElement base_h = standard ? ring.h1() : ring.h2();
  const RingElement twist_h = standard ? ring.h2() : ring.h1();

  const RingElement ch = detail::sum_of(e.ch, e.ring);
  const RingElement td = detail::sum_of(standard ? todd.td_p : todd.td_q, e.ring);
  const RingElement integrand = ch * td;
  const RingElement re_weight = power(base_h, base_dim - 1);
  const RingElement im_weight = power(base_h, base_dim);

  // e^{n*twist_h} as a polynomial in n with ring-element coefficients.
  std::vector<RingElement> exp_twist;
  RingElement h_pow = ring.one();
  for (int j = 0; j <= fibre_dim; ++j) {
    exp_twist.push_back(factorial(j).reciprocal() * h_pow);
    h_pow = h_pow * twist_h;
  }

  std::vector<ComplexRational> coeffs;
  for (int j = 0; j <= fibre_dim; ++j) {
    const RingElement term = exp_twist[static_cast<std::size_t>(j)] * integrand;
    coeffs.emplace_back(-integrate(re_weight * term), integrate(im_weight * term));
  }
  return ComplexPolynomial(std::move(coeffs));
}

/// Closed-form coefficients (standard orientation, 0 <= k <= r):
///   a_k = -(1/k!) int H1^{n-1} H2^k sum_{i+j=r+1-k} td_i ch_j
///   b_k =  (1/k!) int H1^n     H2^k sum_{i+j=r-k}   td_i ch_j
/// Primed orientation (0 <= k <= n) uses td_q and
///   a'_k = -(1/k!) int H1^k H2^{r-1} sum_{i+j=n+1-k} td'_i ch_j
///   b'_k =  (1/k!) int H1^k H2^r     sum_{i+j=n-k}   td'_i ch_j
inline CoeffVector coefficients(const SheafData& e, const ToddData& todd,
                                Orientation orientation = Orientation::Standard) {
  detail::check_sheaf_todd(e, todd);
  const BigradedRing& ring = *e.ring;
  const bool standard = orientation == Orientation::Standard;
  const int base_dim = standard ? ring.dim_x() : ring.dim_s();
  const int top = standard ? ring.dim_s() : ring.dim_x();
  const std::vector<RingElement>& td = standard ? todd.td_p : todd.td_q;
  const RingElement base_h = standard ? ring.h1() : ring.h2();
  const RingElement twist_h = standard ? ring.h2() : ring.h1();

  auto graded_sum = [&](int degree) {
    RingElement acc = ring.zero();
    for (int i = 0; i <= degree && i <= top; ++i) {
      const int j = degree - i;
      if (j < 0 || j >= static_cast<int>(e.ch.size())) continue;
      acc += td[static_cast<std::size_t>(i)] * e.ch[static_cast<std::size_t>(j)];
    }
    return acc;
  };

  std::vector<Rational> a, b;
  for (int k = 0; k <= top; ++k) {
    const Rational inv_fact = factorial(k).reciprocal();
    const RingElement twist = power(twist_h, k);
    a.push_back(-inv_fact * integrate(power(base_h, base_dim - 1) * twist * graded_sum(top + 1 - k)));
    b.push_back(inv_fact * integrate(power(base_h, base_dim) * twist * graded_sum(top - k)));
  }
  return {std::move(a), std::move(b), orientation};
}

/// Normalised leading charge Z_S(E) = (a_r + i b_r) r! / vol_s.
inline ComplexRational z_s(const SheafData& e, const ToddData& todd) {
  const CoeffVector c = coefficients(e, todd, Orientation::Standard);
  const std::size_t r = static_cast<std::size_t>(c.top);
  const Rational scale = factorial(c.top) / e.ring->vol_s();
  return {c.a[r] * scale, c.b[r] * scale};
}

}  // namespace stabkit
