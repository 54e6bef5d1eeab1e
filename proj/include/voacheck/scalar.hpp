#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace voacheck {

/// Exact rational number. GMP keeps it canonical (reduced, positive denominator).
using Scalar = mpq_class;

/// num/den in canonical form. mpq_class(num, den) alone is not reduced.
inline Scalar frac(long num, long den) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

/// r(r-1)...(r-i+1)/i! for any integer r.
Scalar binomial_coeff(std::int64_t r, std::int64_t i);

/// "num/den", always with the slash.
std::string to_string(const Scalar& s);

/// Accepts "p", "p/q", with optional sign. Throws std::invalid_argument.
Scalar parse_scalar(std::string_view text);

/// (-1)^k
inline int sign_power(std::int64_t k) { return (k % 2 == 0) ? 1 : -1; }

/// z^k for integer k; z must be nonzero when k < 0.
Scalar power(const Scalar& z, std::int64_t k);

Scalar factorial(std::int64_t n);

}  // namespace voacheck
