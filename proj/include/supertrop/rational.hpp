#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "supertrop/errors.hpp"

namespace supertrop {

// Exact rational backed by GMP. Always stored in lowest terms with a positive
// denominator, so equality is structural.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline std::string render_rational(const Rational& q) {
  const Integer& num = boost::multiprecision::numerator(q);
  const Integer& den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

inline bool scan_digits(std::string_view text, std::size_t& pos, std::string& out) {
  const std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    out.push_back(text[pos]);
    ++pos;
  }
  return pos > start;
}

}  // namespace detail

// Consumes `[-]digits[/digits]` starting at `pos`, advancing `pos` past it.
// `offset` is added to reported error positions so callers embedding rationals
// in a larger grammar get positions relative to their own input.
inline Rational parse_rational_prefix(std::string_view text, std::size_t& pos,
                                      std::size_t offset = 0) {
  std::string num;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    if (text[pos] == '-') num.push_back('-');
    ++pos;
  }
  if (!detail::scan_digits(text, pos, num)) {
    throw parse_error("expected digits", offset + pos);
  }
  Integer denominator = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    std::string den;
    const std::size_t den_pos = pos;
    if (!detail::scan_digits(text, pos, den)) {
      throw parse_error("expected denominator digits", offset + pos);
    }
    denominator = Integer(den);
    if (denominator == 0) throw parse_error("zero denominator", offset + den_pos);
  }
  return Rational(Integer(num), denominator);
}

// Parses the whole string as a rational; trailing input is an error.
inline Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  Rational q = parse_rational_prefix(text, pos);
  if (pos != text.size()) throw parse_error("unexpected trailing input", pos);
  return q;
}

}  // namespace supertrop
