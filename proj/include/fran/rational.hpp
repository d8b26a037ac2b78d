// rational.hpp - Exact rational arithmetic used throughout the engine.
// Values are normalized to lowest terms with a positive denominator; floating
// point appears only when emitting decimal output columns.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fran {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational positive_part(const Rational& x) { return x > 0 ? x : Rational(0); }

// 2^exponent as an exact rational; negative exponents give 1/2^|e|.
inline Rational pow2(int exponent) {
  BigInt p = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(exponent >= 0 ? exponent : -exponent));
  return exponent >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

namespace detail {
inline bool parse_digits(std::string_view text, std::size_t& pos, BigInt& out) {
  std::size_t start = pos;
  BigInt value = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    value = value * 10 + (text[pos] - '0');
    ++pos;
  }
  if (pos == start) return false;
  out = value;
  return true;
}
}  // namespace detail

// Accepts "p/q", plain integers, and decimal strings; decimals convert
// exactly ("0.25" -> 1/4). Throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt integer_part;
  if (!detail::parse_digits(text, pos, integer_part))
    throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
  Rational value(integer_part);
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    BigInt den;
    if (!detail::parse_digits(text, pos, den) || den == 0 || pos != text.size())
      throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
    value = Rational(integer_part, den);
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t frac_start = pos;
    BigInt frac;
    if (!detail::parse_digits(text, pos, frac) || pos != text.size())
      throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(pos - frac_start));
    value = Rational(integer_part * scale + frac, scale);
  } else if (pos != text.size()) {
    throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
  }
  return negative ? Rational(-value) : value;
}

// "p/q", or just "p" when the denominator is one.
inline std::string format_rational(const Rational& x) {
  std::string out = numerator(x).str();
  if (denominator(x) != 1) {
    out += '/';
    out += denominator(x).str();
  }
  return out;
}

// Decimal rendering with 12 significant digits, for CSV columns.
inline std::string format_decimal(const Rational& x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", to_double(x));
  return buf;
}

}  // namespace fran
