#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "pointset.hpp"

namespace qu {

// Expression templates off: values compose in ?:, std::max and lambdas without surprises.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Accepts "p", "-p", "p/q"; surrounding blanks are ignored.
inline Rational parse_rational(const std::string& text) {
  const auto b = text.find_first_not_of(" \t\r");
  const auto e = text.find_last_not_of(" \t\r");
  if (b == std::string::npos) throw error("rational: empty text");
  const std::string t = text.substr(b, e - b + 1);
  auto integer = [&](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw error("rational: malformed '" + t + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') throw error("rational: malformed '" + t + "'");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  };
  const auto slash = t.find('/');
  if (slash == std::string::npos) return Rational(integer(t));
  const BigInt q = integer(t.substr(slash + 1));
  if (q == 0) throw error("rational: zero denominator in '" + t + "'");
  return Rational(integer(t.substr(0, slash)), q);
}

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& r) {
  const BigInt n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

inline Rational pow2(int k) {
  Rational r = 1;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) r = k < 0 ? r / 2 : r * 2;
  return r;
}

}  // namespace qu
