#pragma once

#include <gmpxx.h>

#include <string>

#include "conhoch/errors.hpp"

namespace conhoch {

/// Exact scalars. mpq_class keeps values canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw PreconditionViolation("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// n (n-1) ... (n-k+1); zero when k > n.
inline Integer falling_factorial(int n, int k) {
  if (k > n) return 0;
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

inline Integer binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace conhoch
