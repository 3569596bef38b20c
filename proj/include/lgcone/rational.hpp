// Exact rational scalars and the error types shared by every module.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace lgcone {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when a series operation's precondition fails (non-unit inverse,
/// substitution with constant term, reversion of a non-identity map ...).
class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a model violates one of its defining invariants. The message
/// names the violated invariant.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the cone recursion meets data that cannot lie on the cone.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw SeriesError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Integer ceil_of(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& x) { return x - Rational(floor_of(x)); }

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

/// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& x) { return x.get_str(); }

inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw SeriesError("not a rational number: '" + text + "'");
  }
  if (sgn(r.get_den()) == 0) throw SeriesError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace lgcone
