#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "omega/error.hpp"
#include "omega/positivity.hpp"

namespace omega {

std::vector<Exponent> local_monomial_basis(unsigned m, unsigned d) {
  std::vector<Exponent> out;
  Exponent e(m, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned v, unsigned left) {
    if (v + 1 == m) {
      e[v] = left;
      out.push_back(e);
      return;
    }
    for (unsigned a = left + 1; a-- > 0;) {
      e[v] = a;
      rec(v + 1, left - a);
    }
  };
  if (m == 0) return {Exponent{}};
  for (unsigned deg = 0; deg <= d; ++deg) rec(0, deg);
  return out;
}

std::size_t GramRepresentation::local_dim() const { return local_monomial_basis(m, d).size(); }

std::size_t GramRepresentation::dim() const {
  std::size_t out = 1;
  for (unsigned i = 0; i <= n; ++i) out *= local_dim();
  return out;
}

void GramRepresentation::validate() const {
  require(static_cast<std::size_t>(entries.rows()) == dim() && entries.rows() == entries.cols(),
          ErrorCode::DimensionMismatch,
          "Gram matrix must be square of size " + std::to_string(dim()));
}

namespace {

std::vector<std::size_t> digits(std::size_t k, std::size_t base, std::size_t count) {
  std::vector<std::size_t> out(count);
  for (std::size_t i = count; i-- > 0;) {
    out[i] = k % base;
    k /= base;
  }
  return out;
}

std::size_t undigits(const std::vector<std::size_t>& k, std::size_t base) {
  std::size_t out = 0;
  for (auto x : k) out = out * base + x;
  return out;
}

// Concatenated exponent of the tensor basis element with flat index k.
std::vector<Exponent> tensor_basis(unsigned n, unsigned m, unsigned d) {
  auto basis = local_monomial_basis(m, d);
  std::size_t D = basis.size(), total = 1;
  for (unsigned i = 0; i <= n; ++i) total *= D;
  std::vector<Exponent> out(total);
  for (std::size_t k = 0; k < total; ++k) {
    for (auto x : digits(k, D, n + 1)) out[k].insert(out[k].end(), basis[x].begin(), basis[x].end());
  }
  return out;
}

}  // namespace

FloatPolynomial gram_map(const GramRepresentation& g) {
  g.validate();
  auto tb = tensor_basis(g.n, g.m, g.d);
  FloatPolynomial out(std::vector<unsigned>(g.n + 1, g.m));
  Exponent e(tb.empty() ? 0 : tb[0].size());
  for (std::size_t a = 0; a < tb.size(); ++a)
    for (std::size_t b = 0; b < tb.size(); ++b) {
      double c = g.entries(static_cast<long>(a), static_cast<long>(b));
      if (c == 0.0) continue;
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = tb[a][v] + tb[b][v];
      out.add_term(e, c);
    }
  return out;
}

namespace {

std::vector<std::size_t> gram_index_map(std::size_t g, const GramRepresentation& m, const SymmetryAction& a) {
  require(a.complex().vertex_count() == m.n + 1, ErrorCode::DimensionMismatch, "action and Gram matrix disagree on n");
  std::size_t D = m.local_dim(), total = m.dim();
  std::vector<std::size_t> s(total);
  for (std::size_t h = 0; h < total; ++h) {
    auto hd = digits(h, D, m.n + 1);
    std::vector<std::size_t> sd(m.n + 1);
    for (std::size_t i = 0; i <= m.n; ++i) sd[i] = hd[static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)))];
    s[h] = undigits(sd, D);
  }
  return s;
}

}  // namespace

Matrix act_gram(std::size_t g, const GramRepresentation& m, const SymmetryAction& a) {
  m.validate();
  auto s = gram_index_map(g, m, a);
  Matrix out(m.entries.rows(), m.entries.cols());
  for (std::size_t h = 0; h < s.size(); ++h)
    for (std::size_t k = 0; k < s.size(); ++k)
      out(static_cast<long>(h), static_cast<long>(k)) = m.entries(static_cast<long>(s[h]), static_cast<long>(s[k]));
  return out;
}

double gram_invariance_defect(const GramRepresentation& m, const SymmetryAction& a) {
  double worst = 0.0;
  for (std::size_t g = 0; g < a.order(); ++g) worst = std::max(worst, (act_gram(g, m, a) - m.entries).cwiseAbs().maxCoeff());
  return worst;
}

GramRepresentation gram_symmetrize(const GramRepresentation& m, const SymmetryAction& a, double tol) {
  m.validate();
  auto p = gram_map(m);
  double scale = 1.0;
  for (const auto& [e, c] : p.terms()) scale = std::max(scale, std::abs(c));
  require(invariance_defect(p, a) <= tol * scale, ErrorCode::NotInvariantPolynomial,
          "the polynomial represented by the Gram matrix is not invariant");
  GramRepresentation out = m;
  out.entries.setZero();
  for (std::size_t g = 0; g < a.order(); ++g) out.entries += act_gram(g, m, a);
  out.entries /= static_cast<double>(a.order());
  return out;
}

double min_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const Matrix& m, double tol) {
  return min_eigenvalue(m) >= -tol * (1.0 + std::abs(m.trace()));
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
}

ConeVerdict check_nonnegative_coefficients(const Polynomial& p) {
  ConeVerdict v{ConeKind::NonnegativeCoefficients};
  v.holds = true;
  for (const auto& [e, c] : p.terms())
    if (sgn(c) < 0) {
      v.holds = false;
      v.detail = "negative coefficient " + to_string(c);
      break;
    }
  return v;
}

ConeVerdict check_sos_certificate(const FloatPolynomial& p, const GramRepresentation* certificate, double tol) {
  if (!certificate) fail(ErrorCode::MissingCertificate, "sum-of-squares check needs a Gram certificate");
  ConeVerdict v{ConeKind::SosWithCertificate};
  if (!is_psd(certificate->entries, tol)) {
    v.detail = "certificate is not positive semidefinite";
    return v;
  }
  double err = max_coefficient_difference(gram_map(*certificate), p);
  v.holds = err <= tol * std::max(1.0, certificate->entries.cwiseAbs().maxCoeff());
  v.detail = v.holds ? "certificate verified" : "certificate does not represent the polynomial";
  return v;
}

ConeVerdict check_nonnegative_sampled(const FloatPolynomial& p, std::size_t samples, std::uint64_t seed) {
  ConeVerdict v{ConeKind::NonnegativeSampled};
  const std::size_t dim = p.variable_count();
  std::vector<std::vector<double>> probes;
  probes.emplace_back(dim, 0.0);
  probes.emplace_back(dim, 1.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (double s : {1.0, -1.0}) {
      std::vector<double> x(dim, 0.0);
      x[i] = s;
      probes.push_back(x);
    }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> x(dim);
    for (auto& xi : x) xi = normal(rng);
    probes.push_back(std::move(x));
  }
  for (const auto& x : probes) {
    double value = p.evaluate(x);
    if (value < -1e-12) {
      v.holds = false;
      v.witness = x;
      v.detail = "counterexample found, value " + std::to_string(value);
      return v;
    }
  }
  v.holds = true;
  v.conclusive = false;
  v.detail = "no counterexample found";
  return v;
}

std::size_t SosFamily::local_dim() const { return local_monomial_basis(m, d).size(); }

std::vector<std::size_t> SosFamily::unflatten(std::size_t k) const { return digits(k, local_dim(), n + 1); }

std::size_t SosFamily::flatten(const std::vector<std::size_t>& k) const { return undigits(k, local_dim()); }

std::vector<std::size_t> act_family_index(std::size_t g, const std::vector<std::size_t>& k, const SymmetryAction& a) {
  std::size_t ginv = a.inverse(g);
  std::vector<std::size_t> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) out[i] = k[static_cast<std::size_t>(a.act_vertex(ginv, static_cast<int>(i)))];
  return out;
}

SosFamily invariant_sos_family(const GramRepresentation& m, const SymmetryAction& a, double tol) {
  m.validate();
  double scale = std::max(1.0, m.entries.cwiseAbs().maxCoeff());
  require((m.entries - m.entries.transpose()).cwiseAbs().maxCoeff() <= tol * scale, ErrorCode::NotPSD,
          "Gram matrix is not symmetric");
  require(gram_invariance_defect(m, a) <= tol * scale, ErrorCode::NotInvariant, "Gram matrix is not invariant");
  require(is_psd(m.entries, tol), ErrorCode::NotPSD, "Gram matrix is not positive semidefinite");
  Matrix b = psd_sqrt(m.entries);
  auto tb = tensor_basis(m.n, m.m, m.d);
  SosFamily f{m.n, m.m, m.d, {}};
  for (std::size_t k = 0; k < tb.size(); ++k) {
    FloatPolynomial q(std::vector<unsigned>(m.n + 1, m.m));
    for (std::size_t j = 0; j < tb.size(); ++j) q.add_term(tb[j], b(static_cast<long>(k), static_cast<long>(j)));
    f.members.push_back(std::move(q));
  }
  return f;
}

double family_invariance_defect(const SosFamily& f, const SymmetryAction& a) {
  double worst = 0.0;
  for (std::size_t k = 0; k < f.members.size(); ++k)
    for (std::size_t g = 0; g < a.order(); ++g) {
      std::size_t gk = f.flatten(act_family_index(g, f.unflatten(k), a));
      worst = std::max(worst, max_coefficient_difference(f.members[gk], act(g, f.members[k], a)));
    }
  return worst;
}

FloatPolynomial sum_of_squares(const SosFamily& f) {
  FloatPolynomial out(std::vector<unsigned>(f.n + 1, f.m));
  for (const auto& q : f.members) out += q * q;
  return out;
}

ElementaryFamily elementary_family(const Matrix& root, unsigned n, unsigned m, unsigned d) {
  auto basis = local_monomial_basis(m, d);
  const std::size_t D = basis.size();
  std::size_t total = 1;
  for (unsigned i = 0; i <= n; ++i) total *= D;
  require(static_cast<std::size_t>(root.rows()) == total && root.rows() == root.cols(), ErrorCode::DimensionMismatch,
          "root matrix has the wrong size");
  ElementaryFamily f;
  f.site_vars.assign(n + 1, m);
  f.grid.assign(n + 1, D);
  f.locals.assign(n + 1, {});
  std::size_t j = 0;
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      double c = root(static_cast<long>(a), static_cast<long>(b));
      if (c == 0.0) continue;
      auto ad = digits(a, D, n + 1), bd = digits(b, D, n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        Rational coeff = i == 0 ? rational_from_double(c) : Rational(1);
        f.locals[i][{ad[i], j}] = RadicalPolynomial(local_monomial(basis[bd[i]], coeff));
      }
      ++j;
    }
  f.terms = j;
  return f;
}

RadicalPolynomial family_member(const ElementaryFamily& f, const std::vector<std::size_t>& k) {
  RadicalPolynomial out;
  for (std::size_t j = 0; j < f.terms; ++j) {
    std::vector<RadicalPolynomial> factors;
    bool zero = false;
    for (std::size_t i = 0; i < f.site_vars.size() && !zero; ++i) {
      auto it = f.locals[i].find({k[i], j});
      if (it == f.locals[i].end())
        zero = true;
      else
        factors.push_back(it->second);
    }
    if (!zero) out += block_product(factors, f.site_vars);
  }
  return out;
}

Integer caratheodory_bound(std::size_t group_order, unsigned m, unsigned d, unsigned n) {
  Integer per = binomial(d + m, d), out;
  mpz_pow_ui(out.get_mpz_t(), per.get_mpz_t(), n + 1);
  return out * static_cast<unsigned long>(group_order);
}

}  // namespace omega
