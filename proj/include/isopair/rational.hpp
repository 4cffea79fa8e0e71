#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace isopair {

/// Exact rational scalar used by the verification backend.
using Rational = boost::multiprecision::cpp_rational;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double to_double(double v) { return v; }
  static double from_fraction(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static bool is_zero(double v, double tol) { return std::fabs(v) <= tol; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static Rational from_fraction(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num, den);
  }
  static bool is_zero(const Rational& v, double) { return v == 0; }
};

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

// materialize boost expression templates before converting
template <class Tag, class A1, class A2, class A3, class A4>
double to_double(const boost::multiprecision::detail::expression<Tag, A1, A2, A3, A4>& e) {
  return Rational(e).convert_to<double>();
}

/// Parse "7", "-3/5" or a plain decimal such as "0.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational num(text.substr(0, slash));
    Rational den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + text);
    return num / den;
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_digits = text.size() - dot - 1;
    Rational den = 1;
    for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits = digits.substr(1);
    if (digits.empty()) throw std::invalid_argument("malformed rational literal: " + text);
    Rational num(digits);
    return neg ? Rational(-num / den) : Rational(num / den);
  }
  return Rational(text);
}

}  // namespace isopair
