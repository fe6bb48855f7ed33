#include "omega/rational.hpp"

#include <cmath>

#include "omega/error.hpp"

namespace omega {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+')
    fail(ErrorCode::ParseError, "malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }
std::string to_string(const Integer& value) { return value.get_str(); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) fail(ErrorCode::InvalidArgument, "non-finite coefficient");
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

double to_double(const Rational& value) { return value.get_d(); }

namespace {

std::optional<Integer> exact_integer_root(const Integer& x, unsigned k) {
  if (x < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = exact_integer_root(Integer(-x), k);
    if (!r) return std::nullopt;
    return Integer(-*r);
  }
  Integer root;
  if (mpz_root(root.get_mpz_t(), x.get_mpz_t(), k) == 0) return std::nullopt;
  return root;
}

}  // namespace

std::optional<Rational> exact_root(const Rational& r, unsigned k) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "root index must be positive");
  if (k == 1) return r;
  auto num = exact_integer_root(r.get_num(), k);
  if (!num) return std::nullopt;
  auto den = exact_integer_root(r.get_den(), k);
  if (!den) return std::nullopt;
  Rational out(*num, *den);
  out.canonicalize();
  return out;
}

Rational pow(const Rational& base, unsigned exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace omega
