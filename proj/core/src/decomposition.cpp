#include "omega/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "omega/error.hpp"

namespace omega {

OmegaGDecomposition::OmegaGDecomposition(SymmetryAction action, std::size_t index_size, std::vector<unsigned> site_vars,
                                         ScaledScalar scale)
    : action_(std::move(action)), index_size_(index_size), site_vars_(std::move(site_vars)), scale_(std::move(scale)) {
  const std::size_t n = action_.complex().vertex_count();
  require(site_vars_.size() == n, ErrorCode::DimensionMismatch, "one variable count per vertex expected");
  for (std::size_t g = 0; g < action_.order(); ++g)
    for (std::size_t i = 0; i < n; ++i)
      require(site_vars_[i] == site_vars_[static_cast<std::size_t>(action_.act_vertex(g, static_cast<int>(i)))],
              ErrorCode::IncompatibleBlockSizes, "the action moves blocks of different sizes onto each other");
  locals_.assign(n, {});
}

void OmegaGDecomposition::check(std::size_t site, const Assignment& beta) const {
  require(site < locals_.size(), ErrorCode::LocalsNotAligned, "site out of range");
  require(beta.size() == complex().multifacets_at(site).size(), ErrorCode::LocalsNotAligned,
          "assignment at site " + std::to_string(site) + " must cover exactly its multifacets");
  for (auto v : beta)
    require(v < index_size_, ErrorCode::InvalidSize, "assignment value outside the index set");
}

void OmegaGDecomposition::add_local(std::size_t site, const Assignment& beta, const RadicalPolynomial& value) {
  check(site, beta);
  for (const auto& g : value.groups())
    require(g.value.sites() == std::vector<unsigned>{site_vars_[site]}, ErrorCode::IncompatibleBlockSizes,
            "local polynomial must live on the variables of its own site");
  if (value.is_zero()) return;
  auto& slot = locals_[site][beta];
  slot += value;
  if (slot.is_zero()) locals_[site].erase(beta);
}

void OmegaGDecomposition::add_local(std::size_t site, const Assignment& beta, const Polynomial& value) {
  add_local(site, beta, RadicalPolynomial(value));
}

const RadicalPolynomial* OmegaGDecomposition::local(std::size_t site, const Assignment& beta) const {
  auto it = locals_[site].find(beta);
  return it == locals_[site].end() ? nullptr : &it->second;
}

std::size_t OmegaGDecomposition::nonzero_count() const {
  std::size_t total = 0;
  for (const auto& m : locals_) total += m.size();
  return total;
}

RadicalPolynomial contract_locals(const WeightedComplex& complex, std::size_t index_size,
                                  const std::vector<const LocalMap*>& locals, const std::vector<unsigned>& site_vars,
                                  const ContractOptions& options) {
  (void)index_size;
  const std::size_t sites = complex.vertex_count();
  require(locals.size() == sites, ErrorCode::DimensionMismatch, "one local map per site expected");
  for (const auto* m : locals)
    if (m->empty()) return {};

  using Entry = const std::pair<const Assignment, RadicalPolynomial>*;
  const std::size_t labels = complex.label_count();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> touch(labels);
  for (std::size_t s = 0; s < sites; ++s) {
    auto at = complex.multifacets_at(s);
    for (std::size_t p = 0; p < at.size(); ++p) touch[static_cast<std::size_t>(at[p])].emplace_back(s, p);
  }
  std::vector<std::vector<std::vector<Entry>>> stack(sites);
  for (std::size_t s = 0; s < sites; ++s) {
    std::vector<Entry> all;
    for (const auto& e : *locals[s]) all.push_back(&e);
    stack[s].push_back(std::move(all));
  }

  std::map<ScaledScalar, Polynomial> acc;
  std::size_t nodes = 0;

  auto leaf = [&]() {
    std::vector<std::pair<ScaledScalar, Polynomial>> partial{{ScaledScalar(), Polynomial::constant({}, Rational(1))}};
    for (std::size_t s = 0; s < sites; ++s) {
      const auto& local = stack[s].back().front()->second;
      std::vector<std::pair<ScaledScalar, Polynomial>> next;
      for (const auto& [k, poly] : partial)
        for (const auto& g : local.groups()) next.emplace_back(k * g.radical, kron(poly, g.value));
      partial = std::move(next);
    }
    for (auto& [k, poly] : partial) {
      auto it = acc.find(k);
      if (it == acc.end())
        acc.emplace(k, std::move(poly));
      else
        it->second += poly;
    }
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t t) {
    if (t == labels) {
      leaf();
      return;
    }
    std::vector<std::uint32_t> values;
    bool first = true;
    for (auto [s, p] : touch[t]) {
      std::vector<std::uint32_t> here;
      for (Entry e : stack[s].back()) here.push_back(e->first[p]);
      std::sort(here.begin(), here.end());
      here.erase(std::unique(here.begin(), here.end()), here.end());
      if (first) {
        values = std::move(here);
        first = false;
      } else {
        std::vector<std::uint32_t> both;
        std::set_intersection(values.begin(), values.end(), here.begin(), here.end(), std::back_inserter(both));
        values = std::move(both);
      }
    }
    for (auto v : values) {
      if (++nodes > options.max_nodes)
        fail(ErrorCode::SearchSpaceTooLarge,
             "contraction visited more than " + std::to_string(options.max_nodes) + " partial assignments");
      for (auto [s, p] : touch[t]) {
        std::vector<Entry> kept;
        for (Entry e : stack[s].back())
          if (e->first[p] == v) kept.push_back(e);
        stack[s].push_back(std::move(kept));
      }
      dfs(t + 1);
      for (auto [s, p] : touch[t]) stack[s].pop_back();
    }
  };
  dfs(0);

  RadicalPolynomial out;
  for (auto& [k, poly] : acc) {
    require(poly.sites() == site_vars, ErrorCode::IncompatibleBlockSizes, "local sizes disagree with the sites");
    out.add(k, poly);
  }
  return out;
}

RadicalPolynomial contract(const OmegaGDecomposition& d, const ContractOptions& options) {
  std::vector<const LocalMap*> locals;
  for (std::size_t s = 0; s < d.complex().vertex_count(); ++s) locals.push_back(&d.locals(s));
  RadicalPolynomial raw = contract_locals(d.complex(), d.index_size(), locals, d.site_vars(), options);
  if (d.scale() == ScaledScalar::one()) return raw;
  return raw.scaled(d.scale().pow(static_cast<unsigned>(d.complex().vertex_count())));
}

bool check_symmetry(const OmegaGDecomposition& d) {
  const auto& a = d.action();
  for (std::size_t i = 0; i < d.complex().vertex_count(); ++i)
    for (const auto& [beta, value] : d.locals(i))
      for (std::size_t g = 1; g < a.order(); ++g) {
        auto gi = static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)));
        const auto* other = d.local(gi, a.act_assignment(g, i, beta));
        if (!other || !(*other == value)) return false;
      }
  return true;
}

RadicalPolynomial elementary_sum(const std::vector<ElementaryTerm>& terms, const std::vector<unsigned>& site_vars) {
  RadicalPolynomial out;
  for (const auto& term : terms) out += block_product(term, site_vars);
  return out;
}

namespace {

void check_terms(const std::vector<ElementaryTerm>& terms, const std::vector<unsigned>& site_vars) {
  for (const auto& t : terms) {
    require(t.size() == site_vars.size(), ErrorCode::DimensionMismatch, "elementary term needs one factor per site");
    for (std::size_t i = 0; i < t.size(); ++i)
      for (const auto& g : t[i].groups())
        require(g.value.sites() == std::vector<unsigned>{site_vars[i]}, ErrorCode::IncompatibleBlockSizes,
                "factor does not live on its site's variables");
  }
}

// Calls fn(site, beta, j, source_site) for every local of the free symmetrization.
template <class Fn>
void for_each_free_local(const SymmetryAction& a, std::size_t terms, Fn fn) {
  const auto z = linearizer(a);
  const std::size_t order = a.order();
  for (std::size_t i = 0; i < a.complex().vertex_count(); ++i) {
    auto labels = a.complex().multifacets_at(i);
    for (std::size_t g = 0; g < order; ++g) {
      auto gi = static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)));
      for (std::size_t j = 0; j < terms; ++j) {
        Assignment beta(labels.size());
        for (std::size_t p = 0; p < labels.size(); ++p)
          beta[p] = static_cast<std::uint32_t>(j * order + a.compose(g, z[static_cast<std::size_t>(labels[p])]));
        fn(i, beta, j, gi);
      }
    }
  }
}

void require_free_connected(const SymmetryAction& a) {
  require(a.complex().is_connected(), ErrorCode::NotConnected, "complex must be connected");
  require(is_free(a), ErrorCode::ActionNotFree, "action on the multifacets is not free");
}

}  // namespace

OmegaGDecomposition from_elementary(const std::vector<ElementaryTerm>& terms, const WeightedComplex& complex,
                                    const std::vector<unsigned>& site_vars) {
  require(complex.is_connected(), ErrorCode::NotConnected, "complex must be connected");
  check_terms(terms, site_vars);
  OmegaGDecomposition d(SymmetryAction::trivial(complex), terms.size(), site_vars);
  for (std::size_t j = 0; j < terms.size(); ++j)
    for (std::size_t i = 0; i < site_vars.size(); ++i)
      d.add_local(i, Assignment(complex.multifacets_at(i).size(), static_cast<std::uint32_t>(j)), terms[j][i]);
  return d;
}

OmegaGDecomposition average_free(const std::vector<ElementaryTerm>& terms, const SymmetryAction& action,
                                 const std::vector<unsigned>& site_vars) {
  require_free_connected(action);
  check_terms(terms, site_vars);
  const auto vertices = static_cast<unsigned>(action.complex().vertex_count());
  OmegaGDecomposition d(action, terms.size() * action.order(), site_vars,
                        ScaledScalar(Rational(1, static_cast<long>(action.order())), vertices));
  for_each_free_local(action, terms.size(), [&](std::size_t i, const Assignment& beta, std::size_t j, std::size_t gi) {
    d.add_local(i, beta, terms[j][gi]);
  });
  return d;
}

OmegaGDecomposition symmetrize_free(const std::vector<ElementaryTerm>& terms, const SymmetryAction& action,
                                    const std::vector<unsigned>& site_vars) {
  require_free_connected(action);
  check_terms(terms, site_vars);
  require(is_invariant(elementary_sum(terms, site_vars), action), ErrorCode::NotInvariant,
          "the elementary sum is not invariant under the action");
  return average_free(terms, action, site_vars);
}

Polynomial local_constant(unsigned vars, const Rational& c) { return Polynomial::constant({vars}, c); }

Polynomial local_monomial(const Exponent& e, const Rational& c) {
  return Polynomial::monomial({static_cast<unsigned>(e.size())}, e, c);
}

RadicalPolynomial square(const RadicalPolynomial& p) {
  return RadicalPolynomial::product(p, p, [](const Polynomial& a, const Polynomial& b) { return a * b; });
}

std::optional<std::vector<RadicalPolynomial>> diagonal_square_split(const RadicalPolynomial& local) {
  std::vector<RadicalPolynomial> out;
  for (const auto& g : local.groups())
    for (const auto& [e, c] : g.value.terms()) {
      if (sgn(c) <= 0) return std::nullopt;
      Exponent half(e.size());
      for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] % 2) return std::nullopt;
        half[v] = e[v] / 2;
      }
      ScaledScalar root = (ScaledScalar(c) * g.radical).root(2);
      out.emplace_back(root, Polynomial::monomial(g.value.sites(), half, Rational(1)));
    }
  return out;
}

bool in_local_cone(const RadicalPolynomial& local, LocalCone cone, const std::vector<RadicalPolynomial>* squares) {
  if (cone == LocalCone::NonnegativeCoefficients) {
    for (const auto& g : local.groups())
      for (const auto& [e, c] : g.value.terms())
        if (sgn(c) < 0) return false;
    return true;
  }
  if (squares) {
    RadicalPolynomial sum;
    for (const auto& t : *squares) sum += square(t);
    return sum == local;
  }
  return diagonal_square_split(local).has_value();
}

SeparableDecomposition separable_symmetrize(const std::vector<SeparableTerm>& terms, const SymmetryAction& action,
                                            const std::vector<unsigned>& site_vars, LocalCone cone,
                                            bool require_invariant) {
  std::vector<ElementaryTerm> plain;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const auto& t = terms[j];
    require(t.squares.empty() || t.squares.size() == t.factors.size(), ErrorCode::DimensionMismatch,
            "square splits must be given for every factor or for none");
    for (std::size_t i = 0; i < t.factors.size(); ++i)
      require(in_local_cone(t.factors[i], cone, t.squares.empty() ? nullptr : &t.squares[i]), ErrorCode::FactorNotInCone,
              "factor " + std::to_string(i) + " of term " + std::to_string(j) + " is not in the local cone");
    plain.push_back(t.factors);
  }
  SeparableDecomposition out;
  out.cone = cone;
  out.dec = require_invariant ? symmetrize_free(plain, action, site_vars) : average_free(plain, action, site_vars);
  out.squares.assign(site_vars.size(), {});
  for_each_free_local(action, terms.size(), [&](std::size_t i, const Assignment& beta, std::size_t j, std::size_t gi) {
    if (!terms[j].squares.empty() && !terms[j].factors[gi].is_zero()) out.squares[i][beta] = terms[j].squares[gi];
  });
  return out;
}

namespace {

void require_compatible(const OmegaGDecomposition& a, const OmegaGDecomposition& b) {
  require(a.site_vars() == b.site_vars() && a.action().order() == b.action().order() &&
              a.complex().vertex_count() == b.complex().vertex_count() &&
              a.complex().label_count() == b.complex().label_count(),
          ErrorCode::DimensionMismatch, "decompositions live on different complexes or actions");
}

}  // namespace

OmegaGDecomposition direct_sum(const OmegaGDecomposition& a, const OmegaGDecomposition& b) {
  require_compatible(a, b);
  require(a.complex().is_connected(), ErrorCode::NotConnected, "direct sums need a connected complex");
  bool same = a.scale() == b.scale();
  OmegaGDecomposition out(a.action(), a.index_size() + b.index_size(), a.site_vars(), same ? a.scale() : ScaledScalar());
  for (std::size_t i = 0; i < a.complex().vertex_count(); ++i) {
    for (const auto& [beta, v] : a.locals(i)) out.add_local(i, beta, same ? v : v.scaled(a.scale()));
    for (const auto& [beta, v] : b.locals(i)) {
      Assignment shifted = beta;
      for (auto& x : shifted) x += static_cast<std::uint32_t>(a.index_size());
      out.add_local(i, shifted, same ? v : v.scaled(b.scale()));
    }
  }
  return out;
}

OmegaGDecomposition product(const OmegaGDecomposition& a, const OmegaGDecomposition& b) {
  require_compatible(a, b);
  OmegaGDecomposition out(a.action(), a.index_size() * b.index_size(), a.site_vars(), a.scale() * b.scale());
  for (std::size_t i = 0; i < a.complex().vertex_count(); ++i)
    for (const auto& [ba, va] : a.locals(i))
      for (const auto& [bb, vb] : b.locals(i)) {
        Assignment beta(ba.size());
        for (std::size_t p = 0; p < ba.size(); ++p)
          beta[p] = static_cast<std::uint32_t>(ba[p] * b.index_size() + bb[p]);
        out.add_local(i, beta,
                      RadicalPolynomial::product(va, vb, [](const Polynomial& x, const Polynomial& y) { return x * y; }));
      }
  return out;
}

}  // namespace omega
