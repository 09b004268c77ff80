#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "nodal_stab/error.hpp"

namespace nodal_stab {

using Int = std::int64_t;
using Rational = mpq_class;

/// n/d in lowest terms with a positive denominator.
inline Rational make_rational(Int n, Int d) {
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  Rational q(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
  q.canonicalize();
  return q;
}

namespace detail {

inline Int to_int(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::DimensionBound, "integer " + z.get_str() + " exceeds 64 bits");
  return static_cast<Int>(z.get_si());
}

}  // namespace detail

/// Largest integer <= q.
inline Int floor(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return detail::to_int(f);
}

/// Smallest integer >= q.
inline Int ceil(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return detail::to_int(c);
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Lowest terms, "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Int parse_int(const std::string& s) {
  std::size_t used = 0;
  Int v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::ParseError, "not an integer: '" + s + "'");
  return v;
}

/// Accepts "p/q" or "p".
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator: '" + s + "'");
  return make_rational(num, den);
}

}  // namespace nodal_stab
