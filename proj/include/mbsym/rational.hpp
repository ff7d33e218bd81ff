#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "mbsym/error.hpp"

namespace mbsym {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Every constructor canonicalizes,
/// and GMP arithmetic keeps results canonical, so structural equality is
/// numeric equality.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(static_cast<long>(value)) {}  // NOLINT
  Rational(long num, long den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Exact binary value of a finite double.
  static Rational from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("Rational: non-finite double");
    return Rational(mpq_class(value));
  }

  /// Parses "a", "-a/b" or a decimal literal such as "0.25" or "-1e-3".
  static Rational parse(std::string_view text);

  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] bool is_one() const { return q_ == 1; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] double to_double() const { return q_.get_d(); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }
  [[nodiscard]] std::string str() const { return q_.get_str(); }
  [[nodiscard]] mpz_class numerator() const { return q_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return q_.get_den(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

inline Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("Rational: empty literal");
  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || sgn(q.get_den()) == 0) {
      throw DomainError("Rational: malformed fraction '" + s + "'");
    }
    return Rational(q);
  }
  // Decimal literal, read exactly as written (0.1 is 1/10, not its binary neighbour).
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  mpz_class digits = 0;
  long scale = 0;
  bool seen_digit = false;
  bool after_point = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (after_point) --scale;
      seen_digit = true;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw DomainError("Rational: malformed literal '" + s + "'");
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw DomainError("Rational: malformed literal '" + s + "'");
    std::size_t used = 0;
    long exponent = 0;
    try {
      exponent = std::stol(s.substr(pos + 1), &used);
    } catch (const std::exception&) {
      throw DomainError("Rational: malformed exponent in '" + s + "'");
    }
    if (pos + 1 + used != s.size()) throw DomainError("Rational: malformed literal '" + s + "'");
    scale += exponent;
  }
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class q = scale < 0 ? mpq_class(digits, ten_pow) : mpq_class(digits * ten_pow);
  q.canonicalize();
  if (negative) q = -q;
  return Rational(q);
}

}  // namespace mbsym

template <>
struct std::hash<mbsym::Rational> {
  std::size_t operator()(const mbsym::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
