// SPDX-License-Identifier: Apache-2.0

#include "thompson/dyadic.hpp"

#include <cctype>
#include <utility>

#include "thompson/error.hpp"

namespace thompson {

namespace {

BigInt shifted_left(const BigInt& v, std::uint32_t k) {
  if (k == 0) return v;
  return v << k;
}

BigInt parse_integer(std::string_view text, std::size_t base_offset) {
  if (text.empty()) throw SyntaxError(base_offset, "expected an integer");
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw SyntaxError(base_offset, "expected digits");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw SyntaxError(base_offset + i, "unexpected character in number");
    }
    value = value * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Dyadic::Dyadic(BigInt numerator, std::uint32_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (numerator_.is_zero()) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0 || boost::multiprecision::bit_test(numerator_, 0)) return;
  std::uint32_t tz = static_cast<std::uint32_t>(boost::multiprecision::lsb(abs(numerator_)));
  std::uint32_t shift = std::min(tz, exponent_);
  numerator_ >>= shift;
  exponent_ -= shift;
}

Dyadic Dyadic::scaled(long long k) const {
  if (is_zero() || k == 0) return *this;
  Dyadic out;
  if (k > 0) {
    auto uk = static_cast<unsigned long long>(k);
    if (uk <= exponent_) {
      out.numerator_ = numerator_;
      out.exponent_ = exponent_ - static_cast<std::uint32_t>(uk);
    } else {
      out.numerator_ = numerator_ << static_cast<unsigned>(uk - exponent_);
      out.exponent_ = 0;
    }
    return out;
  }
  out.numerator_ = numerator_;
  out.exponent_ = exponent_ + static_cast<std::uint32_t>(-k);
  out.normalize();
  return out;
}

long long Dyadic::valuation() const {
  auto tz = static_cast<long long>(boost::multiprecision::lsb(abs(numerator_)));
  return tz - static_cast<long long>(exponent_);
}

BigInt Dyadic::odd_part() const {
  auto tz = boost::multiprecision::lsb(abs(numerator_));
  return numerator_ >> tz;
}

Rational Dyadic::to_rational() const {
  return Rational(numerator_, shifted_left(BigInt(1), exponent_));
}

Dyadic Dyadic::operator-() const {
  Dyadic out = *this;
  out.numerator_ = -out.numerator_;
  return out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.exponent_ == b.exponent_) return Dyadic(a.numerator_ + b.numerator_, a.exponent_);
  if (a.exponent_ > b.exponent_) {
    return Dyadic(a.numerator_ + shifted_left(b.numerator_, a.exponent_ - b.exponent_), a.exponent_);
  }
  return Dyadic(shifted_left(a.numerator_, b.exponent_ - a.exponent_) + b.numerator_, b.exponent_);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  // Product of odd numerators stays odd, so no normalization is needed unless
  // one side is an even integer.
  return Dyadic(a.numerator_ * b.numerator_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int sa = a.sign();
  int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (a.exponent_ == b.exponent_) {
    int c = a.numerator_.compare(b.numerator_);
    return c <=> 0;
  }
  if (a.exponent_ > b.exponent_) {
    int c = a.numerator_.compare(shifted_left(b.numerator_, a.exponent_ - b.exponent_));
    return c <=> 0;
  }
  int c = shifted_left(a.numerator_, b.exponent_ - a.exponent_).compare(b.numerator_);
  return c <=> 0;
}

std::string Dyadic::to_string() const {
  std::string out = numerator_.str();
  if (exponent_ > 0) {
    out += '/';
    out += shifted_left(BigInt(1), exponent_).str();
  }
  return out;
}

Dyadic Dyadic::parse(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view body = text.substr(begin, end - begin);
  auto slash = body.find('/');
  if (slash == std::string_view::npos) return Dyadic(parse_integer(body, begin), 0);

  BigInt num = parse_integer(body.substr(0, slash), begin);
  std::string_view den_text = body.substr(slash + 1);
  std::size_t den_offset = begin + slash + 1;
  if (den_text.size() > 2 && den_text[0] == '2' && den_text[1] == '^') {
    BigInt k = parse_integer(den_text.substr(2), den_offset + 2);
    if (k < 0 || k > 1000000) throw SyntaxError(den_offset + 2, "exponent out of range");
    return Dyadic(std::move(num), static_cast<std::uint32_t>(k));
  }
  BigInt den = parse_integer(den_text, den_offset);
  if (den <= 0) throw SyntaxError(den_offset, "denominator must be positive");
  if ((den & (den - 1)) != 0) {
    throw Error(ErrorCode::NotDyadic, std::string(body) + " has a denominator that is not a power of two");
  }
  auto k = static_cast<std::uint32_t>(boost::multiprecision::msb(den));
  return Dyadic(std::move(num), k);
}

std::size_t Dyadic::hash() const noexcept {
  std::size_t h = std::hash<BigInt>{}(numerator_);
  return h ^ (static_cast<std::size_t>(exponent_) * 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Dyadic dyadic_arith(const Dyadic& x, const Dyadic& y, DyadicOp op) {
  switch (op) {
    case DyadicOp::Add: return x + y;
    case DyadicOp::Sub: return x - y;
    case DyadicOp::Mul: return x * y;
    case DyadicOp::Halve: return x.halved();
    case DyadicOp::Double: return x.doubled();
  }
  return x;
}

bool is_dyadic(const Rational& r) {
  const BigInt den = boost::multiprecision::denominator(r);
  return (den & (den - 1)) == 0;
}

Dyadic dyadic_from_rational(const Rational& r) {
  if (!is_dyadic(r)) throw Error(ErrorCode::NotDyadic, rational_to_string(r) + " is not dyadic");
  const BigInt den = boost::multiprecision::denominator(r);
  return Dyadic(boost::multiprecision::numerator(r), static_cast<std::uint32_t>(boost::multiprecision::msb(den)));
}

std::string rational_to_string(const Rational& r) {
  const BigInt den = boost::multiprecision::denominator(r);
  std::string out = boost::multiprecision::numerator(r).str();
  if (den != 1) out += "/" + den.str();
  return out;
}

}  // namespace thompson
