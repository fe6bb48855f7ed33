#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "omega/error.hpp"
#include "omega/radical.hpp"
#include "omega/rational.hpp"

namespace omega {

class SymmetryAction;

// Exponents of all variables, concatenated block by block in site order.
using Exponent = std::vector<std::uint32_t>;

namespace detail {
inline bool coeff_is_zero(const Rational& c) { return sgn(c) == 0; }
inline bool coeff_is_zero(double c) { return c == 0.0; }
inline double coeff_to_double(const Rational& c) { return c.get_d(); }
inline double coeff_to_double(double c) { return c; }
}  // namespace detail

// Polynomial on blocks of variables x^[0], ..., x^[n]; sites()[i] is the number
// of variables in block i. Terms are kept sorted lexicographically on the
// concatenated exponent and no zero coefficient is stored.
template <class Coeff>
class BasicPolynomial {
 public:
  using coefficient_type = Coeff;
  using TermMap = std::map<Exponent, Coeff>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::vector<unsigned> sites) : sites_(std::move(sites)) {}

  static BasicPolynomial constant(std::vector<unsigned> sites, const Coeff& c) {
    BasicPolynomial p(std::move(sites));
    p.add_term(Exponent(p.variable_count(), 0), c);
    return p;
  }

  static BasicPolynomial monomial(std::vector<unsigned> sites, Exponent e, const Coeff& c) {
    BasicPolynomial p(std::move(sites));
    p.add_term(e, c);
    return p;
  }

  const std::vector<unsigned>& sites() const { return sites_; }
  std::size_t site_count() const { return sites_.size(); }
  unsigned variable_count() const { return std::accumulate(sites_.begin(), sites_.end(), 0u); }
  unsigned offset(std::size_t site) const {
    return std::accumulate(sites_.begin(), sites_.begin() + static_cast<long>(site), 0u);
  }

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const Exponent& e, const Coeff& c) {
    if (e.size() != variable_count())
      fail(ErrorCode::IncompatibleBlockSizes, "exponent length does not match variable count");
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second = it->second + c;
    if (detail::coeff_is_zero(it->second)) terms_.erase(it);
  }

  BasicPolynomial operator+(const BasicPolynomial& o) const {
    check_same_sites(o);
    BasicPolynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
  }

  BasicPolynomial operator-() const {
    BasicPolynomial out(sites_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, Coeff(-c));
    return out;
  }

  BasicPolynomial operator-(const BasicPolynomial& o) const { return *this + (-o); }

  BasicPolynomial operator*(const Coeff& s) const {
    BasicPolynomial out(sites_);
    if (detail::coeff_is_zero(s)) return out;
    for (const auto& [e, c] : terms_) out.add_term(e, Coeff(c * s));
    return out;
  }

  BasicPolynomial operator*(const BasicPolynomial& o) const {
    check_same_sites(o);
    BasicPolynomial out(sites_);
    Exponent e(variable_count());
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
        out.add_term(e, Coeff(ca * cb));
      }
    return out;
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    check_same_sites(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  bool operator==(const BasicPolynomial& o) const { return sites_ == o.sites_ && terms_ == o.terms_; }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
    return d;
  }

  unsigned local_degree(std::size_t site) const {
    unsigned off = offset(site), d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned s = 0;
      for (unsigned v = 0; v < sites_[site]; ++v) s += e[off + v];
      d = std::max(d, s);
    }
    return d;
  }

  double evaluate(std::span<const double> point) const {
    if (point.size() != variable_count())
      fail(ErrorCode::DimensionMismatch, "evaluation point has wrong dimension");
    double total = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = detail::coeff_to_double(c);
      for (std::size_t v = 0; v < e.size(); ++v)
        if (e[v]) t *= std::pow(point[v], static_cast<double>(e[v]));
      total += t;
    }
    return total;
  }

  // Product of polynomials in disjoint variable blocks; the sites of b follow those of a.
  friend BasicPolynomial kron(const BasicPolynomial& a, const BasicPolynomial& b) {
    std::vector<unsigned> sites = a.sites_;
    sites.insert(sites.end(), b.sites_.begin(), b.sites_.end());
    BasicPolynomial out(std::move(sites));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e = ea;
        e.insert(e.end(), eb.begin(), eb.end());
        out.terms_.emplace(std::move(e), Coeff(ca * cb));
      }
    return out;
  }

 private:
  void check_same_sites(const BasicPolynomial& o) const {
    if (sites_ != o.sites_) fail(ErrorCode::IncompatibleBlockSizes, "polynomials live on different blocks");
  }

  std::vector<unsigned> sites_;
  TermMap terms_;
};

using Polynomial = BasicPolynomial<Rational>;
using FloatPolynomial = BasicPolynomial<double>;

extern template class BasicPolynomial<Rational>;
extern template class BasicPolynomial<double>;

inline bool is_zero_value(const Polynomial& p) { return p.is_zero(); }

// Sum of radical * rational polynomial; the value type of every local factor.
using RadicalPolynomial = RadicalCombination<Polynomial>;

FloatPolynomial to_float(const Polynomial& p);
FloatPolynomial to_float(const RadicalPolynomial& p, const std::vector<unsigned>& sites);
Polynomial to_exact(const FloatPolynomial& p);

// Largest absolute coefficient of a - b.
double max_coefficient_difference(const FloatPolynomial& a, const FloatPolynomial& b);

// Block product of single-site factors in site order.
Polynomial block_product(std::span<const Polynomial> locals);
RadicalPolynomial block_product(std::span<const RadicalPolynomial> locals, const std::vector<unsigned>& sites);

// Moves the exponent block of site i to site perm[i]; blocks must have matching sizes.
template <class Coeff>
BasicPolynomial<Coeff> permute_sites(const BasicPolynomial<Coeff>& p, std::span<const int> perm);

// (g p)(x^[0], ..., x^[n]) = p(x^[g 0], ..., x^[g n]).
Polynomial act(std::size_t g, const Polynomial& p, const SymmetryAction& a);
FloatPolynomial act(std::size_t g, const FloatPolynomial& p, const SymmetryAction& a);
bool is_invariant(const Polynomial& p, const SymmetryAction& a);
bool is_invariant(const RadicalPolynomial& p, const SymmetryAction& a);
double invariance_defect(const FloatPolynomial& p, const SymmetryAction& a);

// Coefficient matrix rank across the cut between site 0 and site 1.
std::size_t bipartite_rank(const Polynomial& p);

std::string to_string(const Polynomial& p);
std::string to_string(const FloatPolynomial& p);

}  // namespace omega
