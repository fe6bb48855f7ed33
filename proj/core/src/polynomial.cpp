#include "omega/polynomial.hpp"

#include <sstream>

#include "omega/symmetry.hpp"

namespace omega {

template class BasicPolynomial<Rational>;
template class BasicPolynomial<double>;

FloatPolynomial to_float(const Polynomial& p) {
  FloatPolynomial out(p.sites());
  for (const auto& [e, c] : p.terms()) out.add_term(e, c.get_d());
  return out;
}

FloatPolynomial to_float(const RadicalPolynomial& p, const std::vector<unsigned>& sites) {
  FloatPolynomial out(sites);
  for (const auto& g : p.groups()) {
    double s = g.radical.to_double();
    for (const auto& [e, c] : g.value.terms()) out.add_term(e, s * c.get_d());
  }
  return out;
}

Polynomial to_exact(const FloatPolynomial& p) {
  Polynomial out(p.sites());
  for (const auto& [e, c] : p.terms()) out.add_term(e, rational_from_double(c));
  return out;
}

double max_coefficient_difference(const FloatPolynomial& a, const FloatPolynomial& b) {
  double worst = 0.0;
  for (const auto& [e, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coefficient(e)));
  for (const auto& [e, c] : b.terms())
    if (!a.terms().count(e)) worst = std::max(worst, std::abs(c));
  return worst;
}

Polynomial block_product(std::span<const Polynomial> locals) {
  if (locals.empty()) return Polynomial::constant({}, Rational(1));
  Polynomial out = locals[0];
  for (std::size_t i = 1; i < locals.size(); ++i) out = kron(out, locals[i]);
  return out;
}

RadicalPolynomial block_product(std::span<const RadicalPolynomial> locals, const std::vector<unsigned>& sites) {
  if (locals.size() != sites.size()) fail(ErrorCode::DimensionMismatch, "one local factor per site expected");
  RadicalPolynomial out(Polynomial::constant({}, Rational(1)));
  for (const auto& local : locals)
    out = RadicalPolynomial::product(out, local, [](const Polynomial& a, const Polynomial& b) { return kron(a, b); });
  if (out.is_zero()) return RadicalPolynomial();
  return out;
}

template <class Coeff>
BasicPolynomial<Coeff> permute_sites(const BasicPolynomial<Coeff>& p, std::span<const int> perm) {
  const auto& sites = p.sites();
  if (perm.size() != sites.size()) fail(ErrorCode::DimensionMismatch, "permutation size differs from site count");
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (sites[static_cast<std::size_t>(perm[i])] != sites[i])
      fail(ErrorCode::IncompatibleBlockSizes, "action moves a block onto a block of different size");
  std::vector<unsigned> offsets(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) offsets[i] = p.offset(i);
  BasicPolynomial<Coeff> out(sites);
  for (const auto& [e, c] : p.terms()) {
    Exponent moved(e.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
      unsigned from = offsets[i], to = offsets[static_cast<std::size_t>(perm[i])];
      for (unsigned v = 0; v < sites[i]; ++v) moved[to + v] = e[from + v];
    }
    out.add_term(moved, c);
  }
  return out;
}

template Polynomial permute_sites(const Polynomial&, std::span<const int>);
template FloatPolynomial permute_sites(const FloatPolynomial&, std::span<const int>);

namespace {
void check_site_count(std::size_t sites, const SymmetryAction& a) {
  if (sites != a.complex().vertex_count())
    fail(ErrorCode::DimensionMismatch, "polynomial site count differs from the complex vertex count");
}
}  // namespace

Polynomial act(std::size_t g, const Polynomial& p, const SymmetryAction& a) {
  check_site_count(p.site_count(), a);
  return permute_sites(p, a.vertex_perm(g));
}

FloatPolynomial act(std::size_t g, const FloatPolynomial& p, const SymmetryAction& a) {
  check_site_count(p.site_count(), a);
  return permute_sites(p, a.vertex_perm(g));
}

bool is_invariant(const Polynomial& p, const SymmetryAction& a) {
  for (std::size_t g = 0; g < a.order(); ++g)
    if (!(act(g, p, a) == p)) return false;
  return true;
}

bool is_invariant(const RadicalPolynomial& p, const SymmetryAction& a) {
  for (const auto& group : p.groups())
    if (!is_invariant(group.value, a)) return false;
  return true;
}

double invariance_defect(const FloatPolynomial& p, const SymmetryAction& a) {
  double worst = 0.0;
  for (std::size_t g = 0; g < a.order(); ++g) worst = std::max(worst, max_coefficient_difference(act(g, p, a), p));
  return worst;
}

std::size_t bipartite_rank(const Polynomial& p) {
  if (p.site_count() != 2) fail(ErrorCode::NotBipartite, "bipartite rank needs exactly two sites");
  unsigned m0 = p.sites()[0];
  std::map<Exponent, std::size_t> rows, cols;
  for (const auto& [e, c] : p.terms()) {
    rows.try_emplace(Exponent(e.begin(), e.begin() + m0), rows.size());
    cols.try_emplace(Exponent(e.begin() + m0, e.end()), cols.size());
  }
  std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(cols.size()));
  for (const auto& [e, c] : p.terms())
    a[rows[Exponent(e.begin(), e.begin() + m0)]][cols[Exponent(e.begin() + m0, e.end())]] = c;

  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols.size() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col] / a[rank][col];
      for (std::size_t k = col; k < cols.size(); ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

namespace {

template <class Coeff>
std::string render(const BasicPolynomial<Coeff>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  std::vector<std::pair<std::size_t, unsigned>> var;  // (site, index)
  for (std::size_t i = 0; i < p.site_count(); ++i)
    for (unsigned v = 0; v < p.sites()[i]; ++v) var.emplace_back(i, v + 1);
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (!e[v]) continue;
      os << "*x" << var[v].first << "_" << var[v].second;
      if (e[v] > 1) os << "^" << e[v];
    }
  }
  return os.str();
}

}  // namespace

std::string to_string(const Polynomial& p) { return render(p); }
std::string to_string(const FloatPolynomial& p) { return render(p); }

}  // namespace omega
