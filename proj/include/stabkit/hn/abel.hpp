#pragma once

#include <string>
#include <vector>

#include "stabkit/error.hpp"
#include "stabkit/grr/hilbert.hpp"
#include "stabkit/hn/slope.hpp"

namespace stabkit {

/// Leading data of one object: b_r, a_r, b_{r-1}, a_{r-1}.
struct FactorEntry {
  Rational b_r;
  Rational a_r;
  Rational b_r1;  // b_{r-1}
  Rational a_r1;  // a_{r-1}

  friend FactorEntry operator+(const FactorEntry& x, const FactorEntry& y) {
    return {x.b_r + y.b_r, x.a_r + y.a_r, x.b_r1 + y.b_r1, x.a_r1 + y.a_r1};
  }
  friend FactorEntry operator*(const Rational& s, const FactorEntry& x) {
    return {s * x.b_r, s * x.a_r, s * x.b_r1, s * x.a_r1};
  }
  friend bool operator==(const FactorEntry&, const FactorEntry&) = default;

  /// b_r a_{r-1} - b_{r-1} a_r.
  [[nodiscard]] Rational discriminant() const { return b_r * a_r1 - b_r1 * a_r; }

  static FactorEntry from(const CoeffVector& c) {
    if (c.top < 1) throw Error("need r >= 1 to form b_{r-1}, a_{r-1}");
    const auto r = static_cast<std::size_t>(c.top);
    return {c.b[r], c.a[r], c.b[r - 1], c.a[r - 1]};
  }
};

/// Factors Q_1, ..., Q_l of a filtration, in order.
using FactorVector = std::vector<FactorEntry>;

/// Slope for the charge a_r - t b_{r-1} + i b_r: (-a_r + t b_{r-1}) / b_r, or
/// +infinity when b_r = 0.
inline Slope sigma_t_slope(const FactorEntry& e, const Rational& t) {
  if (t.sign() < 0) throw Error("sigma_t needs t >= 0, got " + t.str());
  if (e.b_r.sign() < 0) throw Error("b_r = " + e.b_r.str() + " < 0 violates the linear positivity b_r >= 0");
  if (e.b_r.is_zero()) return Slope::infinity();
  return Slope((-e.a_r + t * e.b_r1) / e.b_r);
}

inline Slope sigma_t_slope(const CoeffVector& c, const Rational& t) {
  const auto r = static_cast<std::size_t>(c.top);
  const Rational b_prev = c.top >= 1 ? c.b[r - 1] : Rational(0);
  return sigma_t_slope(FactorEntry{c.b[r], c.a[r], b_prev, Rational(0)}, t);
}

struct HypothesisCheck {
  int id = 0;
  bool holds = true;
  std::string detail;
};

/// One link of the chain, `lhs relation rhs` with relation ">=" or "=".
struct ChainLink {
  std::string lhs;
  std::string relation;
  std::string rhs;
  bool holds = false;
};

struct AbelReport {
  Rational t;
  FactorEntry total;
  std::vector<HypothesisCheck> hypotheses;
  bool hypotheses_hold = true;

  /// Named intermediate values of the summation chain.
  std::vector<std::pair<std::string, Rational>> steps;
  std::vector<ChainLink> links;

  Rational lhs;  // b_r(E) a_{r-1}(E) - a_r(E) b_{r-1}(E)
  Rational rhs;  // (1/t) sum_{i<j} (a_i b_j - a_j b_i)^2 / (b_i b_j)
  /// lhs >= rhs >= 0; only claimed when the hypotheses hold.
  bool conclusion_holds = false;
  /// lhs == 0.
  bool equality = false;
  /// All ratios a_r(Q_k) / b_r(Q_k) coincide.
  bool ratios_coincide = false;

  [[nodiscard]] bool violated() const { return hypotheses_hold && !conclusion_holds; }
};

/// Validates the Abel-summation argument on concrete numbers.
///
/// Hypotheses, for the factors Q_1..Q_l of E = sum Q_k:
///  (1) -a_r/b_r strictly decreasing along the factors;
///  (2) b_r a_{r-1} - b_{r-1} a_r >= 0 for every factor;
///  (3) for every j, mu_t(Q_1+..+Q_j) <= mu_t(E) <= mu_t(Q_j+..+Q_l).
/// Every intermediate value of the chain is evaluated exactly and each link is
/// checked, ending in lhs >= rhs >= 0 with the square roots cleared.
inline AbelReport abel_chain_check(const FactorVector& factors, const Rational& t) {
  if (factors.empty()) throw Error("abel_chain_check needs at least one factor");
  if (t.sign() <= 0) throw Error("abel_chain_check needs t > 0, got " + t.str());
  for (std::size_t k = 0; k < factors.size(); ++k)
    if (factors[k].b_r.sign() <= 0)
      throw Error("factor " + std::to_string(k + 1) + " has b_r = " + factors[k].b_r.str() + " <= 0");

  AbelReport rep;
  rep.t = t;
  const std::size_t l = factors.size();
  FactorEntry total{};
  for (const auto& f : factors) total = total + f;
  rep.total = total;

  auto mu_t = [&](const FactorEntry& e) { return sigma_t_slope(e, t).value(); };
  auto ratio = [&](std::size_t k) { return factors[k].a_r / factors[k].b_r; };

  HypothesisCheck h1{1, true, {}};
  for (std::size_t k = 0; k + 1 < l && h1.holds; ++k) {
    if (!(-ratio(k) > -ratio(k + 1))) {
      h1.holds = false;
      h1.detail = "-a_r/b_r is not strictly decreasing at Q_" + std::to_string(k + 1) + " -> Q_" + std::to_string(k + 2) +
                  " (" + (-ratio(k)).str() + " vs " + (-ratio(k + 1)).str() + ")";
    }
  }
  HypothesisCheck h2{2, true, {}};
  for (std::size_t k = 0; k < l && h2.holds; ++k) {
    if (factors[k].discriminant().sign() < 0) {
      h2.holds = false;
      h2.detail = "b_r a_{r-1} - b_{r-1} a_r = " + factors[k].discriminant().str() + " < 0 for Q_" + std::to_string(k + 1);
    }
  }
  HypothesisCheck h3{3, true, {}};
  const Rational mu_total = mu_t(total);
  for (std::size_t j = 0; j < l && h3.holds; ++j) {
    FactorEntry prefix{}, suffix{};
    for (std::size_t k = 0; k <= j; ++k) prefix = prefix + factors[k];
    for (std::size_t k = j; k < l; ++k) suffix = suffix + factors[k];
    const Rational mu_prefix = mu_t(prefix);
    const Rational mu_suffix = mu_t(suffix);
    if (mu_prefix > mu_total) {
      h3.holds = false;
      h3.detail = "j=" + std::to_string(j + 1) + ": sigma_t slope of Q_1..Q_j is " + mu_prefix.str() +
                  " > total " + mu_total.str();
    } else if (mu_total > mu_suffix) {
      h3.holds = false;
      h3.detail = "j=" + std::to_string(j + 1) + ": sigma_t slope of Q_j..Q_l is " + mu_suffix.str() +
                  " < total " + mu_total.str();
    }
  }
  rep.hypotheses = {h1, h2, h3};
  rep.hypotheses_hold = h1.holds && h2.holds && h3.holds;

  // Chain values.
  const Rational inv_t = t.reciprocal();
  const Rational step_a = total.a_r1;
  Rational step_b;
  for (std::size_t k = 0; k < l; ++k) step_b += factors[k].a_r * factors[k].b_r1 / factors[k].b_r;

  Rational step_b_abel = ratio(l - 1) * total.b_r1;
  Rational step_c = ratio(l - 1) * total.b_r1;
  {
    Rational prefix_b_r1, prefix_s;
    for (std::size_t j = 0; j + 1 < l; ++j) {
      prefix_b_r1 += factors[j].b_r1;
      prefix_s += mu_total * factors[j].b_r + factors[j].a_r;
      const Rational gap = ratio(j + 1) - ratio(j);
      step_b_abel -= prefix_b_r1 * gap;
      step_c -= inv_t * prefix_s * gap;
    }
  }
  Rational step_c_abel;
  Rational sum_sq_over_b;
  for (std::size_t k = 0; k < l; ++k) {
    step_c_abel += ratio(k) * (mu_total * factors[k].b_r + factors[k].a_r);
    sum_sq_over_b += factors[k].a_r * factors[k].a_r / factors[k].b_r;
  }
  step_c_abel *= inv_t;
  const Rational step_closed = inv_t * (total.a_r * mu_total + sum_sq_over_b);

  rep.steps = {{"a_{r-1}(E)", step_a},
               {"sum_k a_r(Q_k) b_{r-1}(Q_k) / b_r(Q_k)", step_b},
               {"Abel-summed form", step_b_abel},
               {"bound from the left side of (3)", step_c},
               {"(1/t) sum_k rho_k (mu_t(E) b_r(Q_k) + a_r(Q_k))", step_c_abel},
               {"(1/t) (a_r(E) mu_t(E) + sum_k a_r(Q_k)^2 / b_r(Q_k))", step_closed}};

  rep.lhs = total.discriminant();
  const Rational rhs_sum_form = inv_t * (total.b_r * sum_sq_over_b - total.a_r * total.a_r);
  Rational rhs;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) {
      const Rational cross_term = factors[i].a_r * factors[j].b_r - factors[j].a_r * factors[i].b_r;
      rhs += cross_term * cross_term / (factors[i].b_r * factors[j].b_r);
    }
  rep.rhs = inv_t * rhs;

  rep.links = {
      {"a_{r-1}(E)", ">=", "sum_k a_r(Q_k) b_{r-1}(Q_k) / b_r(Q_k)", step_a >= step_b},
      {"sum_k a_r(Q_k) b_{r-1}(Q_k) / b_r(Q_k)", "=", "Abel-summed form", step_b == step_b_abel},
      {"Abel-summed form", ">=", "bound from the left side of (3)", step_b_abel >= step_c},
      {"bound from the left side of (3)", "=", "(1/t) sum_k rho_k (mu_t(E) b_r(Q_k) + a_r(Q_k))",
       step_c == step_c_abel},
      {"(1/t) sum_k rho_k (mu_t(E) b_r(Q_k) + a_r(Q_k))", "=",
       "(1/t) (a_r(E) mu_t(E) + sum_k a_r(Q_k)^2 / b_r(Q_k))", step_c_abel == step_closed},
      {"b_r(E) a_{r-1}(E) - a_r(E) b_{r-1}(E)", ">=", "(1/t) (b_r(E) sum_k a_r(Q_k)^2 / b_r(Q_k) - a_r(E)^2)",
       rep.lhs >= rhs_sum_form},
      {"(1/t) (b_r(E) sum_k a_r(Q_k)^2 / b_r(Q_k) - a_r(E)^2)", "=",
       "(1/t) sum_{i<j} (a_r(Q_i) b_r(Q_j) - a_r(Q_j) b_r(Q_i))^2 / (b_r(Q_i) b_r(Q_j))", rhs_sum_form == rep.rhs},
      {"(1/t) sum_{i<j} (a_r(Q_i) b_r(Q_j) - a_r(Q_j) b_r(Q_i))^2 / (b_r(Q_i) b_r(Q_j))", ">=", "0",
       rep.rhs.sign() >= 0},
  };

  rep.conclusion_holds = rep.lhs >= rep.rhs && rep.rhs.sign() >= 0;
  rep.equality = rep.lhs.is_zero();
  rep.ratios_coincide = true;
  for (std::size_t k = 1; k < l; ++k) rep.ratios_coincide = rep.ratios_coincide && ratio(k) == ratio(0);
  return rep;
}

}  // namespace stabkit
