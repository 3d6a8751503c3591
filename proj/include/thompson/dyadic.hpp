// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace thompson {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/*
 * Exact element of Z[1/2]: numerator / 2^exponent.
 *
 * Canonical form: numerator odd, or exponent == 0. Every constructor and
 * operation normalizes, so equality is structural.
 */
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long long value) : numerator_(value) {}  // NOLINT(google-explicit-constructor)
  Dyadic(BigInt numerator, std::uint32_t exponent);

  const BigInt& numerator() const noexcept { return numerator_; }
  std::uint32_t exponent() const noexcept { return exponent_; }

  bool is_zero() const noexcept { return numerator_.is_zero(); }
  int sign() const noexcept { return numerator_.sign(); }

  /// Multiply by 2^k (k may be negative). halve/double are the k = -1 / +1 cases.
  Dyadic scaled(long long k) const;
  Dyadic halved() const { return scaled(-1); }
  Dyadic doubled() const { return scaled(1); }

  /// For nonzero x = odd * 2^v, returns v.
  long long valuation() const;
  /// For nonzero x = odd * 2^v, returns odd.
  BigInt odd_part() const;

  Rational to_rational() const;

  Dyadic operator-() const;
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
  Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }
  Dyadic& operator*=(const Dyadic& b) { return *this = *this * b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  /// Reduced fraction text: `3/8`, `-1/2`, `5`.
  std::string to_string() const;

  /// Accepts `n`, `n/d` with d a power of two, and `n/2^k`. Throws SyntaxError
  /// on malformed text and NotDyadic when the denominator is not a power of two.
  static Dyadic parse(std::string_view text);

  std::size_t hash() const noexcept;

 private:
  void normalize();

  BigInt numerator_{0};
  std::uint32_t exponent_ = 0;
};

enum class DyadicOp { Add, Sub, Mul, Halve, Double };

/// Uniform entry point for the arithmetic table; `y` is ignored by the unary ops.
Dyadic dyadic_arith(const Dyadic& x, const Dyadic& y, DyadicOp op);

Dyadic dyadic_from_rational(const Rational& r);  // throws NotDyadic
bool is_dyadic(const Rational& r);
std::string rational_to_string(const Rational& r);

/// 2^k - 1 style helpers used across modules.
inline Dyadic pow2(long long k) { return Dyadic(1).scaled(k); }

}  // namespace thompson

template <>
struct std::hash<thompson::Dyadic> {
  std::size_t operator()(const thompson::Dyadic& d) const noexcept { return d.hash(); }
};
