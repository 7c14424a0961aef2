#pragma once

// Independent references for the GRR side: Todd series from Bernoulli
// numbers, and Hilbert polynomials of pushforwards that can be written down
// by hand (line bundles on products of projective spaces and curves).

#include <vector>

#include "stabkit/exact/polynomial.hpp"
#include "stabkit/exact/rational.hpp"

namespace oracle {

using stabkit::ComplexPolynomial;
using stabkit::ComplexRational;
using stabkit::Rational;

/// B_0..B_m with B_1 = -1/2, from sum_{j<=k} C(k+1, j) B_j = 0.
inline std::vector<Rational> bernoulli(int m) {
  std::vector<Rational> b{Rational(1)};
  for (int k = 1; k <= m; ++k) {
    Rational acc;
    for (int j = 0; j < k; ++j) acc += stabkit::binomial(k + 1, j) * b[static_cast<std::size_t>(j)];
    b.push_back(-acc / Rational(k + 1));
  }
  return b;
}

/// Coefficients of x / (1 - e^{-x}) = sum_k (-1)^k B_k x^k / k!, up to x^m.
inline std::vector<Rational> todd_series(int m) {
  const std::vector<Rational> b = bernoulli(m);
  std::vector<Rational> out;
  for (int k = 0; k <= m; ++k)
    out.push_back((k % 2 == 0 ? Rational(1) : Rational(-1)) * b[static_cast<std::size_t>(k)] / stabkit::factorial(k));
  return out;
}

/// f^e truncated at degree m.
inline std::vector<Rational> series_power(const std::vector<Rational>& f, int e, int m) {
  std::vector<Rational> out(static_cast<std::size_t>(m + 1));
  out[0] = Rational(1);
  for (int step = 0; step < e; ++step) {
    std::vector<Rational> next(static_cast<std::size_t>(m + 1));
    for (int i = 0; i <= m; ++i)
      for (int j = 0; i + j <= m; ++j)
        next[static_cast<std::size_t>(i + j)] += out[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(j)];
    out = std::move(next);
  }
  return out;
}

/// Todd class of P^m as coefficients of h^0..h^m: (h / (1 - e^{-h}))^{m+1}.
inline std::vector<Rational> projective_todd(int m) { return series_power(todd_series(m), m + 1, m); }

/// L(k) for O(a, b) on P^n x P^r: the pushforward is O(a) tensored with a
/// vector space of dimension chi(P^r, O(b + k)) = C(b + k + r, r), and
/// Z(O_{P^n}(a)) = -a + i. Returned as a polynomial in k.
inline ComplexPolynomial proj_line_bundle(int a, int b, int r) {
  // prod_{j=1}^{r} (k + b + j) / r!
  std::vector<ComplexRational> poly{ComplexRational(Rational(1))};
  for (int j = 1; j <= r; ++j) {
    std::vector<ComplexRational> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i] * ComplexRational(Rational(b + j));
      next[i + 1] += poly[i];
    }
    poly = std::move(next);
  }
  const ComplexRational z(Rational(-a) / stabkit::factorial(r), Rational(1) / stabkit::factorial(r));
  for (auto& c : poly) c = c * z;
  return ComplexPolynomial(std::move(poly));
}

/// Curve X (H1 of degree d1) times an elliptic curve S (H2 of degree d2),
/// E = L_X (x) L_S with deg L_X = alpha, deg L_S = beta. Riemann-Roch on S
/// gives chi(L_S(k)) = beta + k d2, and Z(L_X) = -alpha + i d1.
inline ComplexPolynomial curve_line_bundle(const Rational& alpha, const Rational& beta, const Rational& d1,
                                           const Rational& d2) {
  const ComplexRational z(-alpha, d1);
  return ComplexPolynomial({z * ComplexRational(beta), z * ComplexRational(d2)});
}

}  // namespace oracle
