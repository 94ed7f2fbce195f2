#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "betafreq/errors.hpp"

namespace betafreq {

using Int = mpz_class;
using Rational = mpq_class;

// Parses "2.5", "-0.125", "7/15", "3", "1e-12" into an exact rational.
inline std::optional<Rational> parse_rational(const std::string& full) {
  if (full.empty()) return std::nullopt;
  std::string s = full;
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos && s.find('/') == std::string::npos) {
    try {
      size_t used = 0;
      exp10 = std::stol(s.substr(epos + 1), &used);
      if (used != s.size() - epos - 1) return std::nullopt;
    } catch (...) {
      return std::nullopt;
    }
    s = s.substr(0, epos);
    if (s.empty()) return std::nullopt;
  }
  auto scale = [&](Rational q) {
    Int pow10 = 1;
    for (long i = 0; i < (exp10 < 0 ? -exp10 : exp10); ++i) pow10 *= 10;
    if (exp10 >= 0) q *= Rational(pow10);
    else q /= Rational(pow10);
    q.canonicalize();
    return q;
  };
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return q;
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Int n;
    if (n.set_str(s, 10) != 0) return std::nullopt;
    return scale(Rational(n));
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
  Int num;
  if (num.set_str(digits, 10) != 0) return std::nullopt;
  Int den = 1;
  for (size_t i = 0; i < s.size() - dot - 1; ++i) den *= 10;
  Rational q(num, den);
  q.canonicalize();
  return scale(q);
}

inline Int floor_of(const Rational& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f;
}

inline Int ceil_of(const Rational& q) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return c;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace betafreq
