// Exact rational scalars used throughout the library.
//
// We use GMP's C++ wrapper (mpq_class) directly.  Everything that has to be
// bit-for-bit exact (Schur polynomial expansions, germ <-> limit conversions,
// section weights) is computed over Rat; floating point enters only in the
// samplers trajectories and the asymptotic/numerical layer.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurtile {

using Rat = mpq_class;
using Int = mpz_class;

inline double to_double(const Rat& q) { return q.get_d(); }

// Canonicalized fraction p/q.  Use this (not the two-argument mpq_class
// constructor) whenever p, q are computed values: mpq_class(6, 6) stays 6/6
// and then compares unequal to 1.
inline Rat frac(long p, long q) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline Int factorial_int(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  Int r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Rat factorial(long n) { return Rat(factorial_int(n)); }

inline Int binomial_int(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

inline Rat binomial(long n, long k) { return Rat(binomial_int(n, k)); }

// q^e for integer e (e < 0 requires q != 0).
inline Rat rat_pow(const Rat& q, long e) {
  if (e == 0) return Rat(1);
  bool neg = e < 0;
  unsigned long a = static_cast<unsigned long>(neg ? -e : e);
  Rat base = q;
  if (neg) {
    if (q == 0) throw std::domain_error("rat_pow: 0 to a negative power");
    base = Rat(q.get_den(), q.get_num());
    base.canonicalize();
  }
  Rat acc = 1, b = base;
  while (a) {
    if (a & 1) acc *= b;
    b *= b;
    a >>= 1;
  }
  return acc;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace schurtile
