#ifndef AMPLIKIT_RATIONAL_HPP
#define AMPLIKIT_RATIONAL_HPP

// Exact rational scalar type and string conversions.
//
// Every determinant, rank, and sign computation in this library is carried
// out over the rationals so that positivity statements are decided exactly,
// with no tolerance anywhere.  GMP's mpq_class supplies the arithmetic; this
// header pins the conventions shared by all modules:
//   - canonical string form is "p" or "p/q" with q > 0 and gcd(|p|, q) = 1,
//   - parsing accepts the same forms and canonicalizes the result.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace amplikit {

using Rat = mpq_class;
using Int = mpz_class;

// Parses "p" or "p/q" in base 10.  Throws std::invalid_argument on malformed
// input or a zero denominator.
inline Rat rat_from_string(const std::string& text) {
  mpq_class value;
  if (value.set_str(text, 10) != 0) {
    throw std::invalid_argument("malformed rational: " + text);
  }
  if (value.get_den() == 0) {
    throw std::invalid_argument("zero denominator: " + text);
  }
  value.canonicalize();
  return value;
}

inline std::string rat_to_string(const Rat& value) { return value.get_str(); }

// Sign in {-1, 0, +1}.
inline int rat_sign(const Rat& value) { return sgn(value); }

}  // namespace amplikit

#endif  // AMPLIKIT_RATIONAL_HPP
