#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "ambit/error.hpp"

namespace ambit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  if (den < 0) return Rational(-Integer(num), -Integer(den));
  return Rational(Integer(num), Integer(den));
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Lowest terms, positive denominator; integers print without "/1".
inline std::string format_rational(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

inline Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size())
    throw Error(ErrorKind::ParseError,
                "malformed rational '" + std::string(whole) + "'");
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9')
      throw Error(ErrorKind::ParseError,
                  "malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

}  // namespace detail

/// Accepts "p" or "p/q" (any sign on p, q > 0 after normalisation).
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(detail::parse_integer(text, text));
  const Integer num = detail::parse_integer(text.substr(0, slash), text);
  const Integer den = detail::parse_integer(text.substr(slash + 1), text);
  if (den == 0)
    throw Error(ErrorKind::ParseError,
                "zero denominator in '" + std::string(text) + "'");
  if (den < 0) return Rational(Integer(-num), Integer(-den));
  return Rational(num, den);
}

}  // namespace ambit
