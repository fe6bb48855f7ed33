#include "omega/tensorbridge.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "omega/error.hpp"

namespace omega {

Polynomial poly_from_tensor(const RationalTensor& t) {
  std::vector<unsigned> sites(t.dims.begin(), t.dims.end());
  Polynomial p(sites);
  const unsigned vars = p.variable_count();
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (sgn(t.entries[k]) == 0) continue;
    auto idx = t.unflat(k);
    Exponent e(vars, 0);
    unsigned off = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      e[off + idx[a]] = 2;
      off += sites[a];
    }
    p.add_term(e, t.entries[k]);
  }
  return p;
}

RationalTensor tensor_from_poly(const Polynomial& p) {
  RationalTensor t(std::vector<std::size_t>(p.sites().begin(), p.sites().end()));
  for (const auto& [e, c] : p.terms()) {
    std::vector<std::size_t> idx;
    unsigned off = 0;
    for (std::size_t a = 0; a < p.site_count(); ++a) {
      long pos = -1;
      for (unsigned v = 0; v < p.sites()[a]; ++v) {
        if (e[off + v] == 0) continue;
        if (e[off + v] != 2 || pos >= 0) fail(ErrorCode::NotCanonicalForm, "monomial is not a product of squared variables");
        pos = v;
      }
      if (pos < 0) fail(ErrorCode::NotCanonicalForm, "monomial misses a site");
      idx.push_back(static_cast<std::size_t>(pos));
      off += p.sites()[a];
    }
    t.at(idx) = c;
  }
  return t;
}

TensorPositivity tensor_positivity(const RationalTensor& t) {
  TensorPositivity out;
  if (t.size() == 0) return out;
  std::size_t best = 0;
  for (std::size_t k = 1; k < t.size(); ++k)
    if (t.entries[k] < t.entries[best]) best = k;
  out.min_value = t.entries[best];
  out.argmin = t.unflat(best);
  out.nonnegative = sgn(out.min_value) >= 0;
  return out;
}

std::size_t assignment_rank(const Assignment& beta, std::size_t index_size) {
  std::size_t r = 0;
  for (auto v : beta) r = r * index_size + v;
  return r;
}

Assignment assignment_unrank(std::size_t rank, std::size_t length, std::size_t index_size) {
  Assignment beta(length);
  for (std::size_t p = length; p-- > 0;) {
    beta[p] = static_cast<std::uint32_t>(rank % index_size);
    rank /= index_size;
  }
  return beta;
}

namespace {

std::size_t local_space(const TensorDecomposition& d, std::size_t site) {
  std::size_t out = 1;
  for (std::size_t p = 0; p < d.action.complex().multifacets_at(site).size(); ++p) out *= d.index_size;
  return out;
}

void validate(const TensorDecomposition& d) {
  const std::size_t n = d.action.complex().vertex_count();
  require(d.dims.size() == n, ErrorCode::DimensionMismatch, "one dimension per site expected");
  if (d.variant == TensorVariant::Psd) {
    require(d.factors.size() == n, ErrorCode::DimensionMismatch, "psd factors needed for every site");
    for (std::size_t i = 0; i < n; ++i) {
      require(d.factors[i].size() == d.dims[i], ErrorCode::DimensionMismatch, "one psd factor per axis value");
      for (const auto& e : d.factors[i]) {
        require(e.size() == local_space(d, i), ErrorCode::DimensionMismatch, "psd factor has the wrong size");
        for (const auto& row : e) require(row.size() == e.size(), ErrorCode::DimensionMismatch, "psd factor not square");
      }
    }
    return;
  }
  require(d.vectors.size() == n, ErrorCode::DimensionMismatch, "local vectors needed for every site");
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [beta, v] : d.vectors[i]) {
      require(beta.size() == d.action.complex().multifacets_at(i).size(), ErrorCode::LocalsNotAligned,
              "assignment does not cover the site's multifacets");
      require(v.size() == d.dims[i], ErrorCode::DimensionMismatch, "local vector has the wrong length");
      if (d.variant == TensorVariant::Nonnegative)
        for (const auto& x : v) require(sgn(x) >= 0, ErrorCode::FactorNotInCone, "negative entry in a nonnegative factor");
    }
}

}  // namespace

OmegaGDecomposition tensor_to_poly(const TensorDecomposition& d) {
  validate(d);
  require(d.variant != TensorVariant::Psd, ErrorCode::InvalidArgument, "psd factors convert through psd_to_sos");
  std::vector<unsigned> vars(d.dims.begin(), d.dims.end());
  OmegaGDecomposition out(d.action, d.index_size, vars);
  for (std::size_t i = 0; i < d.dims.size(); ++i)
    for (const auto& [beta, v] : d.vectors[i]) {
      Polynomial local(std::vector<unsigned>{vars[i]});
      for (std::size_t j = 0; j < v.size(); ++j) {
        Exponent e(vars[i], 0);
        e[j] = 2;
        local.add_term(e, v[j]);
      }
      out.add_local(i, beta, local);
    }
  return out;
}

TensorDecomposition poly_to_tensor(const OmegaGDecomposition& d, TensorVariant variant) {
  require(variant != TensorVariant::Psd, ErrorCode::InvalidArgument, "psd factors come from sos_to_psd");
  auto s = d.scale().as_rational();
  require(s.has_value(), ErrorCode::NotCanonicalForm, "irrational scale cannot be absorbed into tensor factors");
  TensorDecomposition out;
  out.variant = variant;
  out.action = d.action();
  out.index_size = d.index_size();
  out.dims.assign(d.site_vars().begin(), d.site_vars().end());
  out.vectors.assign(out.dims.size(), {});
  for (std::size_t i = 0; i < out.dims.size(); ++i)
    for (const auto& [beta, local] : d.locals(i)) {
      auto value = local.rational_value();
      require(value.has_value(), ErrorCode::NotCanonicalForm, "local has irrational coefficients");
      std::vector<Rational> v(out.dims[i]);
      for (const auto& [e, c] : value->terms()) {
        long pos = -1;
        for (std::size_t j = 0; j < e.size(); ++j) {
          if (e[j] == 0) continue;
          if (e[j] != 2 || pos >= 0) fail(ErrorCode::NotCanonicalForm, "local is not a combination of squared variables");
          pos = static_cast<long>(j);
        }
        if (pos < 0) fail(ErrorCode::NotCanonicalForm, "local has a constant term");
        v[static_cast<std::size_t>(pos)] = c * *s;
      }
      out.vectors[i][beta] = v;
    }
  validate(out);
  return out;
}

RationalTensor contract_tensor(const TensorDecomposition& d, std::size_t max_assignments) {
  validate(d);
  const auto& c = d.action.complex();
  const std::size_t n = c.vertex_count();
  if (d.variant != TensorVariant::Psd) {
    auto p = contract(tensor_to_poly(d), ContractOptions{max_assignments});
    if (p.is_zero()) return RationalTensor(d.dims);
    auto value = p.rational_value();
    require(value.has_value(), ErrorCode::NotCanonicalForm, "contraction is not rational");
    return tensor_from_poly(*value);
  }
  double pairs = std::pow(static_cast<double>(d.index_size), 2.0 * static_cast<double>(c.label_count()));
  if (pairs > static_cast<double>(max_assignments))
    fail(ErrorCode::SearchSpaceTooLarge, "too many assignment pairs for psd contraction");
  RationalTensor t(d.dims);
  std::size_t global = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(d.index_size), c.label_count())));
  std::vector<std::vector<std::size_t>> rank(global, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < global; ++a) {
    Assignment alpha = assignment_unrank(a, c.label_count(), d.index_size);
    for (std::size_t i = 0; i < n; ++i) {
      auto labels = c.multifacets_at(i);
      Assignment r(labels.size());
      for (std::size_t p = 0; p < labels.size(); ++p) r[p] = alpha[static_cast<std::size_t>(labels[p])];
      rank[a][i] = assignment_rank(r, d.index_size);
    }
  }
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto j = t.unflat(k);
    Rational total = 0;
    for (std::size_t a = 0; a < global; ++a)
      for (std::size_t b = 0; b < global; ++b) {
        Rational prod = 1;
        for (std::size_t i = 0; i < n && sgn(prod) != 0; ++i) prod *= d.factors[i][j[i]][rank[a][i]][rank[b][i]];
        total += prod;
      }
    t.entries[k] = total;
  }
  return t;
}

bool check_tensor_symmetry(const TensorDecomposition& d) {
  validate(d);
  const auto& a = d.action;
  const std::size_t n = a.complex().vertex_count();
  for (std::size_t g = 1; g < a.order(); ++g)
    for (std::size_t i = 0; i < n; ++i) {
      auto gi = static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)));
      if (d.variant != TensorVariant::Psd) {
        for (const auto& [beta, v] : d.vectors[i]) {
          auto it = d.vectors[gi].find(a.act_assignment(g, i, beta));
          if (it == d.vectors[gi].end() || it->second != v) return false;
        }
        continue;
      }
      const std::size_t len = a.complex().multifacets_at(i).size(), size = local_space(d, i);
      for (std::size_t j = 0; j < d.dims[i]; ++j)
        for (std::size_t r = 0; r < size; ++r)
          for (std::size_t s = 0; s < size; ++s) {
            auto gr = assignment_rank(a.act_assignment(g, i, assignment_unrank(r, len, d.index_size)), d.index_size);
            auto gs = assignment_rank(a.act_assignment(g, i, assignment_unrank(s, len, d.index_size)), d.index_size);
            if (d.factors[gi][j][gr][gs] != d.factors[i][j][r][s]) return false;
          }
    }
  return true;
}

std::vector<std::pair<Rational, std::vector<Rational>>> ldl_split(const RationalMatrix& e) {
  const std::size_t n = e.size();
  RationalMatrix a = e;
  std::vector<std::pair<Rational, std::vector<Rational>>> out;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational pivot = a[k][k];
    if (sgn(pivot) < 0) fail(ErrorCode::NotPSD, "negative pivot in LDL split");
    if (sgn(pivot) == 0) {
      for (std::size_t r = k; r < n; ++r)
        if (sgn(a[r][k]) != 0) fail(ErrorCode::NotPSD, "zero pivot with nonzero column");
      continue;
    }
    std::vector<Rational> l(n);
    for (std::size_t r = k; r < n; ++r) l[r] = a[r][k] / pivot;
    for (std::size_t r = k; r < n; ++r)
      for (std::size_t s = k; s < n; ++s) a[r][s] -= pivot * l[r] * l[s];
    out.emplace_back(pivot, std::move(l));
  }
  return out;
}

SosDecomposition psd_to_sos(const TensorDecomposition& d) {
  validate(d);
  require(d.variant == TensorVariant::Psd, ErrorCode::InvalidArgument, "psd factors expected");
  const auto& a = d.action;
  require(is_vertex_action_free(a), ErrorCode::VertexActionNotFree, "symmetric square roots need a free vertex action");
  const auto& c = a.complex();
  const std::size_t n = c.vertex_count();
  std::size_t width = 0;
  for (std::size_t i = 0; i < n; ++i) width = std::max(width, local_space(d, i));
  std::vector<std::size_t> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = d.dims[i] * width;
  std::vector<unsigned> vars(d.dims.begin(), d.dims.end());
  SosDecomposition out(a, d.index_size, grid, vars);
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    const std::size_t len = c.multifacets_at(i).size(), size = local_space(d, i);
    for (std::size_t j = 0; j < d.dims[i]; ++j) {
      auto split = ldl_split(d.factors[i][j]);
      for (std::size_t k = 0; k < split.size(); ++k) {
        ScaledScalar root = ScaledScalar(split[k].first).root(2);
        for (std::size_t r = 0; r < size; ++r) {
          const Rational& coeff = split[k].second[r];
          if (sgn(coeff) == 0) continue;
          Exponent e(vars[i], 0);
          e[j] = 1;
          RadicalPolynomial q(root, local_monomial(e, coeff));
          Assignment beta = assignment_unrank(r, len, d.index_size);
          for (std::size_t g = 0; g < a.order(); ++g) {
            auto gi = static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)));
            out.add_local(gi, j * width + k, a.act_assignment(g, i, beta), q);
          }
        }
      }
    }
    for (std::size_t g = 0; g < a.order(); ++g) done[static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)))] = true;
  }
  return out;
}

TensorDecomposition sos_to_psd(const SosDecomposition& d) {
  auto s2 = d.scale().pow(2).as_rational();
  require(s2.has_value(), ErrorCode::NotCanonicalForm, "squared scale must be rational");
  const auto& c = d.complex();
  const std::size_t n = c.vertex_count();
  TensorDecomposition out;
  out.variant = TensorVariant::Psd;
  out.action = d.action();
  out.index_size = d.index_size();
  out.dims.assign(d.site_vars().begin(), d.site_vars().end());
  out.factors.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = out.dims[i], len = c.multifacets_at(i).size(), size = local_space(out, i);
    // b[j][k] maps beta rank -> coefficient of x_j in q_{k, beta}.
    std::vector<std::map<std::size_t, std::map<std::size_t, RadicalNumber>>> b(m);
    for (const auto& [key, local] : d.locals(i)) {
      std::size_t r = assignment_rank(key.second, d.index_size());
      for (const auto& g : local.groups())
        for (const auto& [e, coeff] : g.value.terms()) {
          long pos = -1;
          for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            if (e[j] != 1 || pos >= 0) fail(ErrorCode::NotCanonicalForm, "sum-of-squares locals must be linear forms");
            pos = static_cast<long>(j);
          }
          if (pos < 0) fail(ErrorCode::NotCanonicalForm, "sum-of-squares locals must be linear forms");
          b[static_cast<std::size_t>(pos)][key.first][r].add(g.radical, coeff);
        }
    }
    (void)len;
    for (std::size_t j = 0; j < m; ++j) {
      RationalMatrix e(size, std::vector<Rational>(size));
      for (const auto& [k, column] : b[j])
        for (const auto& [r, x] : column)
          for (const auto& [s, y] : column) {
            auto prod = RadicalNumber::product(x, y, [](const Rational& u, const Rational& v) { return Rational(u * v); });
            if (prod.is_zero()) continue;
            auto q = prod.rational_value();
            require(q.has_value(), ErrorCode::NotCanonicalForm, "psd factor entries would be irrational");
            e[r][s] += *q * *s2;
          }
      out.factors[i].push_back(std::move(e));
    }
  }
  validate(out);
  return out;
}

RationalTensor distance_matrix(std::size_t m) {
  RationalTensor t({m, m});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      long diff = static_cast<long>(i) - static_cast<long>(j);
      t.at({i, j}) = Rational(diff * diff);
    }
  return t;
}

TensorDecomposition psd_distance_factorization(std::size_t m) {
  TensorDecomposition d;
  d.variant = TensorVariant::Psd;
  d.action = SymmetryAction::trivial(standard_complex(StandardComplex::SingleEdge));
  d.index_size = 2;
  d.dims = {m, m};
  d.factors.assign(2, {});
  for (std::size_t i = 1; i <= m; ++i) {
    Rational x(static_cast<long>(i));
    d.factors[0].push_back({{Rational(1), x}, {x, x * x}});
    d.factors[1].push_back({{x * x, -x}, {-x, Rational(1)}});
  }
  return d;
}

Matrix polygon_slack(std::size_t m) {
  require(m >= 3, ErrorCode::InvalidSize, "polygon needs at least three vertices");
  const double pi = std::acos(-1.0), md = static_cast<double>(m);
  Matrix s(static_cast<long>(m), static_cast<long>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double k = static_cast<double>((j + m - i) % m);
      s(static_cast<long>(i), static_cast<long>(j)) = std::cos(pi / md) - std::cos(pi * (2.0 * k - 1.0) / md);
    }
  return s;
}

std::size_t numeric_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t r = 0;
  for (long k = 0; k < sv.size(); ++k)
    if (sv(k) > rel_tol * sv(0)) ++r;
  return r;
}

std::size_t nn_rank_support_bound(const Matrix& m) {
  std::set<std::vector<bool>> supports;
  for (long r = 0; r < m.rows(); ++r) {
    std::vector<bool> s(static_cast<std::size_t>(m.cols()));
    for (long c = 0; c < m.cols(); ++c) s[static_cast<std::size_t>(c)] = m(r, c) != 0.0;
    supports.insert(s);
  }
  std::size_t bound = 0;
  while ((std::size_t{1} << bound) < supports.size()) ++bound;
  return bound;
}

NmfResult nn_rank_upper_heuristic(const Matrix& m, std::size_t restarts, std::uint64_t seed, double rel_tol,
                                  std::size_t iterations) {
  const long rows = m.rows(), cols = m.cols();
  const double norm = m.norm();
  NmfResult trivial{static_cast<std::size_t>(std::min(rows, cols)), 0.0};
  if (norm == 0.0) return {0, 0.0};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  const double eps = 1e-300;
  for (std::size_t r = std::max<std::size_t>(1, nn_rank_support_bound(m)); r < trivial.rank; ++r) {
    double best = INFINITY;
    for (std::size_t attempt = 0; attempt < restarts; ++attempt) {
      Matrix w(rows, static_cast<long>(r)), h(static_cast<long>(r), cols);
      for (long a = 0; a < w.size(); ++a) w.data()[a] = unif(rng);
      for (long a = 0; a < h.size(); ++a) h.data()[a] = unif(rng);
      for (std::size_t it = 0; it < iterations; ++it) {
        h = h.cwiseProduct((w.transpose() * m).cwiseQuotient((w.transpose() * w * h).array().max(eps).matrix()));
        w = w.cwiseProduct((m * h.transpose()).cwiseQuotient((w * h * h.transpose()).array().max(eps).matrix()));
      }
      best = std::min(best, (m - w * h).norm() / norm);
      if (best < rel_tol) return {r, best};
    }
  }
  return trivial;
}

SeparationRow rank_separations(std::size_t m, std::uint64_t seed, std::size_t restarts) {
  SeparationRow row;
  row.m = m;
  auto t = distance_matrix(m);
  row.plain_rank = bipartite_rank(poly_from_tensor(t));
  auto psd = psd_distance_factorization(m);
  row.psd_index = psd.index_size;
  row.psd_identity_exact = contract_tensor(psd) == t;
  Matrix dense(static_cast<long>(m), static_cast<long>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) dense(static_cast<long>(i), static_cast<long>(j)) = t.at({i, j}).get_d();
  row.nn_lower = nn_rank_support_bound(dense);
  auto nmf = nn_rank_upper_heuristic(dense, restarts, seed);
  row.nn_upper_heuristic = nmf.rank;
  row.nn_upper_residual = nmf.residual;
  if (m >= 3) {
    Matrix s = polygon_slack(m);
    row.slack_rank = numeric_rank(s);
    row.slack_incidence_zero = true;
    for (std::size_t i = 0; i < m; ++i) {
      row.slack_incidence_zero = row.slack_incidence_zero && s(static_cast<long>(i), static_cast<long>(i)) == 0.0 &&
                                 s(static_cast<long>(i), static_cast<long>((i + 1) % m)) == 0.0;
      for (std::size_t j = 0; j < m; ++j)
        row.slack_incidence_zero = row.slack_incidence_zero && s(static_cast<long>(i), static_cast<long>(j)) >= -1e-12;
    }
  }
  return row;
}

}  // namespace omega
