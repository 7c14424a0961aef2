#pragma once

#include <complex>
#include <ostream>
#include <string>

#include "stabkit/exact/rational.hpp"

namespace stabkit {

/// Gaussian rational re + i*im. Houses central-charge values.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

  [[nodiscard]] bool is_zero() const { return re.is_zero() && im.is_zero(); }
  [[nodiscard]] ComplexRational conj() const { return {re, -im}; }
  [[nodiscard]] Rational norm_squared() const { return re * re + im * im; }
  [[nodiscard]] std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  /// "a+bi" style rendering for human-readable reports.
  [[nodiscard]] std::string str() const {
    if (im.is_zero()) return re.str();
    std::string imag = im.abs() == Rational(1) ? std::string("i") : im.abs().str() + "i";
    if (re.is_zero()) return im.sign() < 0 ? "-" + imag : imag;
    return re.str() + (im.sign() < 0 ? "-" : "+") + imag;
  }

  friend ComplexRational operator+(const ComplexRational& x, const ComplexRational& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend ComplexRational operator-(const ComplexRational& x, const ComplexRational& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend ComplexRational operator-(const ComplexRational& x) { return {-x.re, -x.im}; }
  friend ComplexRational operator*(const ComplexRational& x, const ComplexRational& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend ComplexRational operator*(const Rational& s, const ComplexRational& z) { return {s * z.re, s * z.im}; }
  friend ComplexRational operator*(const ComplexRational& z, const Rational& s) { return s * z; }

  ComplexRational& operator+=(const ComplexRational& y) {
    re += y.re;
    im += y.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& y) {
    re -= y.re;
    im -= y.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& y) { return *this = *this * y; }

  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
  friend std::ostream& operator<<(std::ostream& os, const ComplexRational& z) { return os << z.str(); }
};

inline const ComplexRational kImaginaryUnit{Rational(0), Rational(1)};

/// Re(d)Im(c) - Im(d)Re(c): positive when c lies counterclockwise of d.
inline Rational cross(const ComplexRational& d, const ComplexRational& c) { return d.re * c.im - d.im * c.re; }

inline Rational dot(const ComplexRational& d, const ComplexRational& c) { return d.re * c.re + d.im * c.im; }

}  // namespace stabkit
