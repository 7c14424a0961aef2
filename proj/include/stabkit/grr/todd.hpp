#pragma once

#include <span>
#include <string>
#include <vector>

#include "stabkit/exact/rational.hpp"
#include "stabkit/ring/bigraded_ring.hpp"

namespace stabkit {

namespace detail {

/// Truncated formal power series with rational coefficients.
using Series = std::vector<Rational>;

inline Series series_multiply(const Series& f, const Series& g, std::size_t order) {
  Series out(order + 1);
  for (std::size_t i = 0; i < f.size() && i <= order; ++i)
    for (std::size_t j = 0; j < g.size() && i + j <= order; ++j) out[i + j] += f[i] * g[j];
  return out;
}

inline Series series_inverse(const Series& f, std::size_t order) {
  Series out(order + 1);
  out[0] = f.at(0).reciprocal();
  for (std::size_t k = 1; k <= order; ++k) {
    Rational acc;
    for (std::size_t j = 1; j <= k && j < f.size(); ++j) acc += f[j] * out[k - j];
    out[k] = -acc * out[0];
  }
  return out;
}

/// log f for f with constant term 1.
inline Series series_log(const Series& f, std::size_t order) {
  Series u = f;
  u.resize(order + 1);
  u[0] = Rational(0);
  Series out(order + 1);
  Series u_pow = u;
  for (std::size_t m = 1; m <= order; ++m) {
    const Rational c = Rational(m % 2 == 1 ? 1 : -1, static_cast<long>(m));
    for (std::size_t k = 0; k <= order; ++k) out[k] += c * u_pow[k];
    u_pow = series_multiply(u_pow, u, order);
  }
  return out;
}

/// Coefficients of log(x / (1 - e^{-x})) up to x^order.
inline Series todd_log_series(std::size_t order) {
  Series g(order + 1);  // (1 - e^{-x}) / x
  for (std::size_t m = 0; m <= order; ++m) g[m] = Rational(m % 2 == 0 ? 1 : -1) / factorial(static_cast<int>(m + 1));
  return series_log(series_inverse(g, order), order);
}

}  // namespace detail

/// Todd classes td_0, td_1, ... of a bundle with Chern classes c_1, c_2, ...
/// (`chern[k]` is c_{k+1}), as universal polynomials evaluated in the ring.
///
/// Works through power sums of the Chern roots (Newton's identities), the
/// logarithm of the Todd series and a nilpotent exponential, so no closed form
/// per degree is hard-coded. The result has one entry per total degree
/// 0..dim_x+dim_s, each the pure total-degree component.
inline std::vector<RingElement> todd_from_chern(const BigradedRing& ring, std::span<const RingElement> chern) {
  const int top = ring.dim_x() + ring.dim_s();
  const std::size_t order = static_cast<std::size_t>(top);
  auto c = [&](int k) -> RingElement {
    if (k >= 1 && k <= static_cast<int>(chern.size())) return chern[static_cast<std::size_t>(k - 1)];
    return ring.zero();
  };
  for (const auto& ck : chern)
    if (ck.ring_ptr().get() != &ring) throw Error("ring mismatch: Chern class from another ring");

  // p_k = sum_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k
  std::vector<RingElement> power_sums{ring.zero()};
  for (int k = 1; k <= top; ++k) {
    RingElement pk = Rational(k % 2 == 1 ? k : -k) * c(k);
    for (int i = 1; i < k; ++i) pk += Rational(i % 2 == 1 ? 1 : -1) * (c(i) * power_sums[static_cast<std::size_t>(k - i)]);
    power_sums.push_back(pk);
  }

  const detail::Series q = detail::todd_log_series(order);
  RingElement log_td = ring.zero();
  for (int k = 1; k <= top; ++k) log_td += q[static_cast<std::size_t>(k)] * power_sums[static_cast<std::size_t>(k)];

  RingElement td = ring.one();
  RingElement term = ring.one();
  for (int m = 1; m <= top; ++m) {
    term = Rational(1, m) * (term * log_td);
    td += term;
  }

  std::vector<RingElement> out;
  for (int i = 0; i <= top; ++i) out.push_back(td.component_of_total_degree(i));
  return out;
}

/// Todd classes of the two relative tangent bundles of X x S:
/// td_p[i] (bidegree (0,i), pulled back from S) for i = 0..r and
/// td_q[i] (bidegree (i,0), pulled back from X) for i = 0..n.
struct ToddData {
  std::vector<RingElement> td_p;
  std::vector<RingElement> td_q;
};

/// Throws InputError unless lengths, bidegrees and td_0 = 1 all hold.
inline void validate_todd(const BigradedRing& ring, const ToddData& todd) {
  auto check = [&](const std::vector<RingElement>& td, int length, bool on_s, const std::string& field) {
    if (static_cast<int>(td.size()) != length)
      throw InputError(field, "expected " + std::to_string(length) + " Todd classes, got " + std::to_string(td.size()));
    for (int i = 0; i < length; ++i) {
      const std::string path = field + "[" + std::to_string(i) + "]";
      const RingElement& t = td[static_cast<std::size_t>(i)];
      if (t.ring_ptr().get() != &ring) throw InputError(path, "Todd class belongs to a different ring");
      const Bidegree want = on_s ? Bidegree::complex(0, i) : Bidegree::complex(i, 0);
      if (!t.has_bidegree(want)) throw InputError(path, "Todd class must have bidegree " + want.str());
    }
    if (td.front() != ring.one()) throw InputError(field + "[0]", "td_0 must be 1");
  };
  check(todd.td_p, ring.dim_s() + 1, true, "todd.td_p");
  check(todd.td_q, ring.dim_x() + 1, false, "todd.td_q");
}

/// Todd data for the factor-swapped ring produced by swap_factors().
inline ToddData swap_todd(const ToddData& todd, const RingPtr& swapped) {
  ToddData out;
  for (const auto& t : todd.td_q) out.td_p.push_back(transport(t, swapped));
  for (const auto& t : todd.td_p) out.td_q.push_back(transport(t, swapped));
  return out;
}

}  // namespace stabkit
