#ifndef SRCS_RATIONAL_HPP
#define SRCS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace srcs {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational &q) { return numerator(q); }
inline Int den(const Rational &q) { return denominator(q); }

/// "7" or "7/3"; always in lowest terms with positive denominator.
inline std::string to_string(const Rational &q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

inline std::optional<Rational> parse_rational(const std::string &s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d <= 0) return std::nullopt;
    return Rational(n, d);
  } catch (const std::exception &) {
    return std::nullopt;
  }
}

/// floor(q) as an integer.
inline Int floor_int(const Rational &q) {
  Int n = num(q), d = den(q);
  Int f = n / d;
  if (n < 0 && f * d != n) --f;
  return f;
}

inline Int ceil_int(const Rational &q) {
  Int f = floor_int(q);
  return f * den(q) == num(q) ? f : f + 1;
}

/// Smallest integer multiple of `step` that is >= q (step > 0).
inline Rational ceil_to_multiple(const Rational &q, const Rational &step) {
  return Rational(ceil_int(Rational(q / step))) * step;
}

inline Rational floor_to_multiple(const Rational &q, const Rational &step) {
  return Rational(floor_int(Rational(q / step))) * step;
}

/// step^k for integer k >= 0.
inline Rational pow_rat(const Rational &base, unsigned k) {
  Rational r = 1;
  for (unsigned i = 0; i < k; ++i) r *= base;
  return r;
}

} // namespace srcs

#endif
