#ifndef GRADUA_RATIONAL_HPP
#define GRADUA_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace gradua {

// All coefficients in the library are exact rationals. Nothing downstream
// (rank decisions, freeness verdicts, cocycle checks) tolerates rounding.
using Rational = mpq_class;
using Integer = mpz_class;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parses "p", "-p" or "p/q" with q > 0 after canonicalization.
Rational parse_rational(const std::string& text);

// mpq_class(p, q) does not canonicalize; this does.
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Canonical serialization: "p" for integers, "p/q" otherwise.
std::string rational_str(const Rational& q);

Rational rational_pow(const Rational& base, long exp);

using QVector = std::vector<Rational>;

bool is_zero_vector(const QVector& v);

}  // namespace gradua

#endif
