#pragma once

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "stabkit/exact/complex_rational.hpp"

namespace stabkit {

/// Polynomial in one variable with Gaussian-rational coefficients, stored by
/// ascending power with trailing zeros trimmed (the zero polynomial is empty).
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<ComplexRational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }
  ComplexPolynomial(std::initializer_list<ComplexRational> coefficients) : coeffs_(coefficients) { trim(); }

  /// Degree, or -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] const std::vector<ComplexRational>& coefficients() const { return coeffs_; }

  [[nodiscard]] ComplexRational coefficient(int power) const {
    if (power < 0 || power > degree()) return {};
    return coeffs_[static_cast<std::size_t>(power)];
  }

  [[nodiscard]] const ComplexRational& leading() const { return coeffs_.back(); }

  [[nodiscard]] ComplexRational operator()(const Rational& x) const {
    ComplexRational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * ComplexRational(x) + *it;
    return acc;
  }

  [[nodiscard]] std::complex<double> evaluate(double x) const {
    std::complex<double> acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_complex();
    return acc;
  }

  friend ComplexPolynomial operator+(const ComplexPolynomial& p, const ComplexPolynomial& q) {
    std::vector<ComplexRational> out(std::max(p.coeffs_.size(), q.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.coefficient(int(k)) + q.coefficient(int(k));
    return ComplexPolynomial(std::move(out));
  }

  friend ComplexPolynomial operator-(const ComplexPolynomial& p) {
    std::vector<ComplexRational> out = p.coeffs_;
    for (auto& c : out) c = -c;
    return ComplexPolynomial(std::move(out));
  }

  friend ComplexPolynomial operator-(const ComplexPolynomial& p, const ComplexPolynomial& q) { return p + (-q); }

  friend ComplexPolynomial operator*(const ComplexPolynomial& p, const ComplexPolynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<ComplexRational> out(p.coeffs_.size() + q.coeffs_.size() - 1);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return ComplexPolynomial(std::move(out));
  }

  friend ComplexPolynomial operator*(const ComplexRational& s, const ComplexPolynomial& p) {
    std::vector<ComplexRational> out = p.coeffs_;
    for (auto& c : out) c = s * c;
    return ComplexPolynomial(std::move(out));
  }

  friend bool operator==(const ComplexPolynomial&, const ComplexPolynomial&) = default;

  [[nodiscard]] std::string str(const std::string& var = "n") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const ComplexRational& c = coeffs_[static_cast<std::size_t>(k)];
      if (c.is_zero()) continue;
      if (!out.empty()) out += " + ";
      const std::string cs = (c.re.is_zero() || c.im.is_zero()) ? c.str() : "(" + c.str() + ")";
      if (k == 0) {
        out += cs;
      } else {
        out += (cs == "1" ? std::string() : cs + "*") + var + (k > 1 ? "^" + std::to_string(k) : "");
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const ComplexPolynomial& p) { return os << p.str(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<ComplexRational> coeffs_;
};

}  // namespace stabkit
