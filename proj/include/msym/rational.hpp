#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace msym {

// Exact rational scalar. mpq_class keeps gcd(|num|, den) = 1 and den > 0
// as long as values are built through canonicalizing entry points, which
// these helpers guarantee.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// Renders "a" or "a/b"; always with den > 0.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Exact square root, if the rational is a perfect square.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  mpz_class num = r.get_num(), den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

}  // namespace msym
