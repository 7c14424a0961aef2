#pragma once

#include <compare>
#include <ostream>
#include <string>

#include "stabkit/error.hpp"
#include "stabkit/exact/complex_rational.hpp"

namespace stabkit {

/// Extended rational: a finite value or +infinity.
class Slope {
 public:
  Slope() = default;
  explicit Slope(Rational value) : value_(std::move(value)) {}
  static Slope infinity() {
    Slope s;
    s.infinite_ = true;
    return s;
  }

  [[nodiscard]] bool is_infinite() const { return infinite_; }
  /// Only meaningful for finite slopes.
  [[nodiscard]] const Rational& value() const { return value_; }

  [[nodiscard]] std::string str() const { return infinite_ ? "+inf" : value_.str(); }

  friend bool operator==(const Slope& x, const Slope& y) {
    if (x.infinite_ || y.infinite_) return x.infinite_ == y.infinite_;
    return x.value_ == y.value_;
  }
  friend std::strong_ordering operator<=>(const Slope& x, const Slope& y) {
    if (x.infinite_ || y.infinite_) return x.infinite_ <=> y.infinite_;
    return x.value_ <=> y.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Slope& s) { return os << s.str(); }

 private:
  bool infinite_ = false;
  Rational value_;
};

/// mu(z) = -Re z / Im z, or +infinity when Im z = 0.
inline Slope slope_of(const ComplexRational& z) {
  if (z.im.is_zero()) return Slope::infinity();
  return Slope(-z.re / z.im);
}

/// Exact comparison of mu(z1) and mu(z2) without dividing. Two charges with
/// Im = 0 compare equal. Im parts must be nonnegative.
inline std::strong_ordering compare_slopes(const ComplexRational& z1, const ComplexRational& z2) {
  const bool inf1 = z1.im.is_zero();
  const bool inf2 = z2.im.is_zero();
  if (inf1 || inf2) return inf1 <=> inf2;
  // Both Im > 0: mu1 - mu2 has the sign of (-Re z1) Im z2 - (-Re z2) Im z1.
  const Rational diff = z2.re * z1.im - z1.re * z2.im;
  return diff.sign() <=> 0;
}

/// Checks the weak positivity of a central charge: Im z >= 0, and Re z <= 0
/// when Im z = 0. With `strict`, Im z = 0 additionally forces Re z < 0.
inline bool is_valid_charge(const ComplexRational& z, bool strict = false) {
  if (z.im.sign() < 0) return false;
  if (z.im.is_zero()) return strict ? z.re.sign() < 0 : z.re.sign() <= 0;
  return true;
}

/// Central charge of a nonzero object under a weak stability function.
class Charge {
 public:
  explicit Charge(ComplexRational z, bool strict = false) : z_(std::move(z)) {
    if (!is_valid_charge(z_, strict))
      throw Error("charge " + z_.str() + " violates " +
                  std::string(strict ? "Im > 0 or (Im = 0 and Re < 0)" : "Im >= 0 and (Im = 0 => Re <= 0)"));
  }
  [[nodiscard]] const ComplexRational& value() const { return z_; }
  [[nodiscard]] Slope slope() const { return slope_of(z_); }

  friend Charge operator+(const Charge& x, const Charge& y) { return Charge(x.z_ + y.z_); }
  friend bool operator==(const Charge&, const Charge&) = default;

 private:
  ComplexRational z_;
};

}  // namespace stabkit
