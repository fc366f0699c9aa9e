#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dioprime {

/// Arbitrary-precision signed rational, always reduced with a positive
/// denominator. Zero is stored as 0/1, so equality is structural: 26/30 and
/// 13/15 are the same value and the same representation.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n);  // NOLINT: implicit from integers is intended
  Rational(std::int64_t num, std::int64_t den);
  Rational(const mpz_class& num, const mpz_class& den);

  /// Parses "p", "-p", "p/q" (whitespace around tokens allowed).
  static Rational parse(std::string_view text);

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return sgn(num_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational abs() const;

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  /// Always "p/q", including q = 1. Used for ledger output.
  std::string fraction_str() const;

  /// Nearest double. Not used inside the exact algebra.
  double to_double() const;

 private:
  void normalize();

  mpz_class num_{0};
  mpz_class den_{1};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace dioprime
