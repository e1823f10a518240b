#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace snntwin {

// All model quantities (weights, thresholds, energies in pJ) are kept as
// exact rationals. Floor/threshold comparisons are discontinuous, so any
// floating-point round-off would make results input-order dependent.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// floor toward -inf (cpp_int division truncates toward zero)
inline Integer floor_rational(const Rational& r) {
  Integer q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

// Parses a decimal literal ("0.05448", "-3", "1.3e2") into an exact
// rational. This is the only ingestion path for numeric config values.
inline Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool negative = false;
  if (i < n && (text[i] == '+' || text[i] == '-')) {
    negative = (text[i] == '-');
    ++i;
  }
  Integer mantissa = 0;
  std::int64_t frac_digits = 0;
  bool any_digit = false;
  for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    mantissa = mantissa * 10 + (text[i] - '0');
    any_digit = true;
  }
  if (i < n && text[i] == '.') {
    ++i;
    for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      mantissa = mantissa * 10 + (text[i] - '0');
      ++frac_digits;
      any_digit = true;
    }
  }
  std::int64_t exponent = 0;
  if (any_digit && i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
      exp_neg = (text[i] == '-');
      ++i;
    }
    bool exp_digit = false;
    for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      exponent = std::min<std::int64_t>(exponent * 10 + (text[i] - '0'), 100000);
      exp_digit = true;
    }
    if (!exp_digit) throw std::domain_error("malformed exponent in decimal: '" + std::string(text) + "'");
    if (exp_neg) exponent = -exponent;
  }
  if (!any_digit || i != n)
    throw std::domain_error("malformed decimal literal: '" + std::string(text) + "'");
  if (exponent > 4096 || exponent < -4096)
    throw std::domain_error("decimal exponent out of range: '" + std::string(text) + "'");

  Rational value(mantissa, 1);
  std::int64_t shift = exponent - frac_digits;
  if (shift > 0) value *= boost::multiprecision::pow(Integer(10), static_cast<unsigned>(shift));
  if (shift < 0) value /= boost::multiprecision::pow(Integer(10), static_cast<unsigned>(-shift));
  if (negative) value = -value;
  return value;
}

// Exact decimal rendering. Only defined for rationals whose reduced
// denominator has no prime factors other than 2 and 5.
inline std::string format_decimal(const Rational& r) {
  Integer num = numerator(r);
  Integer den = denominator(r);
  bool negative = num < 0;
  if (negative) num = -num;
  Integer d = den;
  std::int64_t twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1)
    throw std::domain_error("rational " + num.str() + "/" + den.str() +
                            " has no finite decimal representation");
  std::int64_t digits = std::max(twos, fives);
  Integer scaled = num * boost::multiprecision::pow(Integer(10), static_cast<unsigned>(digits)) / den;
  std::string s = scaled.str();
  std::string out;
  if (digits == 0) {
    out = s;
  } else {
    if (static_cast<std::int64_t>(s.size()) <= digits)
      s.insert(0, static_cast<std::size_t>(digits + 1 - static_cast<std::int64_t>(s.size())), '0');
    out = s.substr(0, s.size() - static_cast<std::size_t>(digits)) + "." +
          s.substr(s.size() - static_cast<std::size_t>(digits));
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return negative ? "-" + out : out;
}

// r * scale where scale is a multiple of denominator(r); result is integral.
inline Integer scale_to_integer(const Rational& r, const Integer& scale) {
  Rational scaled = r * Rational(scale);
  if (denominator(scaled) != 1)
    throw std::domain_error("scale does not clear the denominator");
  return numerator(scaled);
}

}  // namespace snntwin
