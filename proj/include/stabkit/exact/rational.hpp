#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace stabkit {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

inline u128 gcd_u128(u128 a, u128 b) {
  constexpr u128 kMax64 = std::numeric_limits<std::uint64_t>::max();
  if (a <= kMax64 && b <= kMax64) return gcd_u64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline u128 abs_u128(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

inline mpz_class to_mpz(i128 v) {
  const bool negative = v < 0;
  const u128 mag = abs_u128(v);
  mpz_class out = static_cast<unsigned long>(mag >> 64);
  out <<= 64;
  out += static_cast<unsigned long>(mag & 0xFFFFFFFFFFFFFFFFULL);
  if (negative) out = -out;
  return out;
}

// INT64_MIN is excluded so that every |num| fits in 63 bits and
// the cross products used by add/compare cannot overflow i128.
inline bool fits_small(i128 v) {
  return v > std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace detail

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 63 bits are stored inline and
/// combined with 128-bit intermediates; anything larger is promoted to a GMP
/// rational. Promotion and demotion are automatic, so two equal values always
/// share a representation.
class Rational {
 public:
  Rational() noexcept = default;

  template <std::integral I>
    requires(!std::same_as<I, bool>)
  Rational(I value) {  // NOLINT(google-explicit-constructor)
    assign(static_cast<detail::i128>(value), 1);
  }

  template <std::integral I, std::integral J>
  Rational(I num, J den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    assign(static_cast<detail::i128>(num), static_cast<detail::i128>(den));
  }

  explicit Rational(const mpq_class& q) { assign_big(q); }

  /// Parses "p", "-p", "p/q" (decimal integers, optional leading sign).
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    auto valid_integer = [](std::string_view s, bool allow_sign) {
      if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    const std::string_view body = trim(text);
    const auto slash = body.find('/');
    const std::string_view num_text = trim(body.substr(0, slash));
    const std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : trim(body.substr(slash + 1));
    if (!valid_integer(num_text, true) || !valid_integer(den_text, false))
      throw std::invalid_argument("not an exact rational: \"" + std::string(text) + "\"");
    std::string num_str(num_text);
    if (!num_str.empty() && num_str.front() == '+') num_str.erase(0, 1);
    mpz_class num(num_str, 10);
    mpz_class den{std::string(den_text), 10};
    if (den == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }

  [[nodiscard]] bool is_small() const noexcept { return big_ == nullptr; }
  [[nodiscard]] bool is_zero() const noexcept { return is_small() && num_ == 0; }
  [[nodiscard]] int sign() const noexcept {
    if (is_small()) return (num_ > 0) - (num_ < 0);
    return sgn(*big_);
  }
  [[nodiscard]] bool is_integer() const noexcept {
    return is_small() ? den_ == 1 : big_->get_den() == 1;
  }

  [[nodiscard]] mpq_class to_mpq() const {
    if (!is_small()) return *big_;
    mpq_class q(detail::to_mpz(num_), detail::to_mpz(den_));
    return q;
  }

  [[nodiscard]] double to_double() const {
    if (is_small()) return static_cast<double>(num_) / static_cast<double>(den_);
    return big_->get_d();
  }

  /// "p" for integers, "p/q" otherwise.
  [[nodiscard]] std::string str() const {
    if (is_small()) return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    return big_->get_str(10);
  }

  [[nodiscard]] Rational abs() const { return sign() < 0 ? -*this : *this; }

  [[nodiscard]] Rational reciprocal() const {
    if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
    if (is_small()) {
      Rational out;
      out.assign(den_, num_);
      return out;
    }
    return Rational(mpq_class(1) / *big_);
  }

  friend Rational operator-(const Rational& x) {
    if (x.is_small()) {
      Rational out;
      out.num_ = -x.num_;
      out.den_ = x.den_;
      return out;
    }
    return Rational(mpq_class(-*x.big_));
  }

  friend Rational operator+(const Rational& x, const Rational& y) {
    if (x.is_small() && y.is_small()) {
      std::int64_t sum = 0;
      if (x.den_ == 1 && y.den_ == 1 && !__builtin_add_overflow(x.num_, y.num_, &sum)) return small_integer(sum);
      if (x.den_ == y.den_) {
        Rational out;
        out.assign(static_cast<detail::i128>(x.num_) + y.num_, x.den_);
        return out;
      }
      Rational out;
      out.assign(static_cast<detail::i128>(x.num_) * y.den_ + static_cast<detail::i128>(y.num_) * x.den_,
                 static_cast<detail::i128>(x.den_) * y.den_);
      return out;
    }
    return Rational(mpq_class(x.to_mpq() + y.to_mpq()));
  }

  friend Rational operator-(const Rational& x, const Rational& y) {
    if (x.is_small() && y.is_small()) {
      std::int64_t diff = 0;
      if (x.den_ == 1 && y.den_ == 1 && !__builtin_sub_overflow(x.num_, y.num_, &diff)) return small_integer(diff);
      Rational out;
      out.assign(static_cast<detail::i128>(x.num_) * y.den_ - static_cast<detail::i128>(y.num_) * x.den_,
                 static_cast<detail::i128>(x.den_) * y.den_);
      return out;
    }
    return Rational(mpq_class(x.to_mpq() - y.to_mpq()));
  }

  friend Rational operator*(const Rational& x, const Rational& y) {
    if (x.is_small() && y.is_small()) {
      if (x.num_ == 0 || y.num_ == 0) return Rational();
      std::int64_t prod = 0;
      if (x.den_ == 1 && y.den_ == 1 && !__builtin_mul_overflow(x.num_, y.num_, &prod)) return small_integer(prod);
      Rational out;
      out.assign(static_cast<detail::i128>(x.num_) * y.num_, static_cast<detail::i128>(x.den_) * y.den_);
      return out;
    }
    return Rational(mpq_class(x.to_mpq() * y.to_mpq()));
  }

  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.is_zero()) throw std::domain_error("Rational: division by zero");
    if (x.is_small() && y.is_small()) {
      Rational out;
      out.assign(static_cast<detail::i128>(x.num_) * y.den_, static_cast<detail::i128>(x.den_) * y.num_);
      return out;
    }
    return Rational(mpq_class(x.to_mpq() / y.to_mpq()));
  }

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend bool operator==(const Rational& x, const Rational& y) {
    if (x.is_small() != y.is_small()) return false;
    if (x.is_small()) return x.num_ == y.num_ && x.den_ == y.den_;
    return *x.big_ == *y.big_;
  }

  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    if (x.is_small() && y.is_small()) {
      if (x.den_ == y.den_) return x.num_ <=> y.num_;
      const detail::i128 lhs = static_cast<detail::i128>(x.num_) * y.den_;
      const detail::i128 rhs = static_cast<detail::i128>(y.num_) * x.den_;
      return lhs <=> rhs;
    }
    const int c = cmp(x.to_mpq(), y.to_mpq());
    return c <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

 private:
  // Any int64 except INT64_MIN, which would break the small-path invariant.
  static Rational small_integer(std::int64_t v) {
    if (v == std::numeric_limits<std::int64_t>::min()) {
      Rational out;
      out.assign(v, 1);
      return out;
    }
    Rational out;
    out.num_ = v;
    return out;
  }

  void assign(detail::i128 num, detail::i128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0 || (den == 1 && detail::fits_small(num))) {
      num_ = static_cast<std::int64_t>(num);
      den_ = 1;
      big_.reset();
      return;
    }
    const detail::u128 g = detail::gcd_u128(detail::abs_u128(num), static_cast<detail::u128>(den));
    if (g > 1) {
      num /= static_cast<detail::i128>(g);
      den /= static_cast<detail::i128>(g);
    }
    if (detail::fits_small(num) && detail::fits_small(den)) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
      big_.reset();
      return;
    }
    mpq_class q(detail::to_mpz(num), detail::to_mpz(den));
    big_ = std::make_shared<const mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
  }

  void assign_big(const mpq_class& q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
      const long ln = n.get_si();
      const long ld = d.get_si();
      if (ln != std::numeric_limits<long>::min()) {
        num_ = ln;
        den_ = ld;
        big_.reset();
        return;
      }
    }
    big_ = std::make_shared<const mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

/// n! as an exact rational.
inline Rational factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  Rational out(1);
  for (int k = 2; k <= n; ++k) out *= Rational(k);
  return out;
}

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational out(1);
  for (int j = 1; j <= k; ++j) out = out * Rational(n - k + j) / Rational(j);
  return out;
}

inline Rational power(const Rational& base, int exponent) {
  if (exponent < 0) return power(base, -exponent).reciprocal();
  Rational out(1);
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

}  // namespace stabkit
