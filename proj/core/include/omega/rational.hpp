#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace omega {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "p/q" and optional leading sign; the result is canonicalized.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

// Every finite double is a dyadic rational, so this conversion is exact.
Rational rational_from_double(double value);
double to_double(const Rational& value);

// Returns r^(1/k) when it is rational; r must be nonnegative for even k.
std::optional<Rational> exact_root(const Rational& r, unsigned k);
Rational pow(const Rational& base, unsigned exponent);

Integer binomial(unsigned n, unsigned k);

}  // namespace omega
