#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "omega/error.hpp"
#include "omega/positivity.hpp"

namespace omega {

SosDecomposition::SosDecomposition(SymmetryAction action, std::size_t index_size, std::vector<std::size_t> grid,
                                   std::vector<unsigned> site_vars, ScaledScalar scale)
    : action_(std::move(action)),
      index_size_(index_size),
      grid_(std::move(grid)),
      site_vars_(std::move(site_vars)),
      scale_(std::move(scale)) {
  const std::size_t n = action_.complex().vertex_count();
  require(grid_.size() == n && site_vars_.size() == n, ErrorCode::DimensionMismatch, "one grid size per site expected");
  for (std::size_t g = 0; g < action_.order(); ++g)
    for (std::size_t i = 0; i < n; ++i) {
      auto gi = static_cast<std::size_t>(action_.act_vertex(g, static_cast<int>(i)));
      require(site_vars_[i] == site_vars_[gi] && grid_[i] == grid_[gi], ErrorCode::IncompatibleBlockSizes,
              "the action moves sites of different shapes onto each other");
    }
  locals_.assign(n, {});
}

void SosDecomposition::add_local(std::size_t site, std::size_t k, const Assignment& beta, const RadicalPolynomial& value) {
  require(site < locals_.size() && k < grid_[site], ErrorCode::LocalsNotAligned, "family index out of range");
  require(beta.size() == complex().multifacets_at(site).size(), ErrorCode::LocalsNotAligned,
          "assignment must cover exactly the multifacets at its site");
  for (auto v : beta) require(v < index_size_, ErrorCode::InvalidSize, "assignment value outside the index set");
  for (const auto& g : value.groups())
    require(g.value.sites() == std::vector<unsigned>{site_vars_[site]}, ErrorCode::IncompatibleBlockSizes,
            "local polynomial must live on its site's variables");
  if (value.is_zero()) return;
  Key key{k, beta};
  auto& slot = locals_[site][key];
  slot += value;
  if (slot.is_zero()) locals_[site].erase(key);
}

const RadicalPolynomial* SosDecomposition::local(std::size_t site, std::size_t k, const Assignment& beta) const {
  auto it = locals_[site].find(Key{k, beta});
  return it == locals_[site].end() ? nullptr : &it->second;
}

std::size_t SosDecomposition::family_size() const {
  std::size_t out = 1;
  for (auto s : grid_) out *= s;
  return out;
}

RadicalPolynomial contract_member(const SosDecomposition& d, const std::vector<std::size_t>& k,
                                  const ContractOptions& options) {
  const std::size_t n = d.complex().vertex_count();
  require(k.size() == n, ErrorCode::DimensionMismatch, "family index needs one entry per site");
  std::vector<LocalMap> maps(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [key, v] : d.locals(i))
      if (key.first == k[i]) maps[i].emplace(key.second, v);
  std::vector<const LocalMap*> ptrs;
  for (const auto& m : maps) ptrs.push_back(&m);
  auto raw = contract_locals(d.complex(), d.index_size(), ptrs, d.site_vars(), options);
  if (d.scale() == ScaledScalar::one()) return raw;
  return raw.scaled(d.scale().pow(static_cast<unsigned>(n)));
}

RadicalPolynomial sum_of_squares(const SosDecomposition& d, const ContractOptions& options) {
  RadicalPolynomial out;
  const std::size_t n = d.complex().vertex_count();
  std::vector<std::size_t> k(n, 0);
  for (std::size_t flat = 0; flat < d.family_size(); ++flat) {
    std::size_t rest = flat;
    for (std::size_t i = n; i-- > 0;) {
      k[i] = rest % d.grid()[i];
      rest /= d.grid()[i];
    }
    auto q = contract_member(d, k, options);
    out += RadicalPolynomial::product(q, q, [](const Polynomial& a, const Polynomial& b) { return a * b; });
  }
  return out;
}

bool check_symmetry(const SosDecomposition& d) {
  const auto& a = d.action();
  for (std::size_t i = 0; i < d.complex().vertex_count(); ++i)
    for (const auto& [key, value] : d.locals(i))
      for (std::size_t g = 1; g < a.order(); ++g) {
        auto gi = static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)));
        const auto* other = d.local(gi, key.first, a.act_assignment(g, i, key.second));
        if (!other || !(*other == value)) return false;
      }
  return true;
}

SosDecomposition family_symmetrize(const ElementaryFamily& f, const SymmetryAction& a) {
  require(a.complex().is_connected(), ErrorCode::NotConnected, "complex must be connected");
  require(is_free(a), ErrorCode::ActionNotFree, "action on the multifacets is not free");
  const std::size_t n = a.complex().vertex_count();
  require(f.site_vars.size() == n && f.grid.size() == n && f.locals.size() == n, ErrorCode::DimensionMismatch,
          "family and complex disagree on the number of sites");
  const auto z = linearizer(a);
  const std::size_t order = a.order();
  SosDecomposition out(a, f.terms * order, f.grid, f.site_vars,
                       ScaledScalar(Rational(1, static_cast<long>(order)), static_cast<unsigned>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    auto labels = a.complex().multifacets_at(i);
    for (std::size_t g = 0; g < order; ++g) {
      auto gi = static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)));
      for (const auto& [key, value] : f.locals[gi]) {
        auto [k, j] = key;
        Assignment beta(labels.size());
        for (std::size_t p = 0; p < labels.size(); ++p)
          beta[p] = static_cast<std::uint32_t>(j * order + a.compose(g, z[static_cast<std::size_t>(labels[p])]));
        out.add_local(i, k, beta, value);
      }
    }
  }
  return out;
}

OmegaGDecomposition sos_to_plain(const SosDecomposition& d) {
  const std::size_t r = d.index_size();
  OmegaGDecomposition out(d.action(), r * r, d.site_vars(), d.scale().pow(2));
  for (std::size_t i = 0; i < d.complex().vertex_count(); ++i) {
    std::map<std::size_t, std::vector<std::pair<const Assignment*, const RadicalPolynomial*>>> by_k;
    for (const auto& [key, v] : d.locals(i)) by_k[key.first].emplace_back(&key.second, &v);
    for (const auto& [k, entries] : by_k)
      for (const auto& [b1, v1] : entries)
        for (const auto& [b2, v2] : entries) {
          Assignment gamma(b1->size());
          for (std::size_t p = 0; p < gamma.size(); ++p)
            gamma[p] = static_cast<std::uint32_t>((*b1)[p] * r + (*b2)[p]);
          out.add_local(i, gamma,
                        RadicalPolynomial::product(*v1, *v2, [](const Polynomial& a, const Polynomial& b) { return a * b; }));
        }
  }
  return out;
}

namespace {

// Calls fn(beta) for every beta in I^size.
template <class Fn>
void for_each_assignment(std::size_t size, std::size_t index_size, Fn fn) {
  Assignment beta(size, 0);
  if (index_size == 0 && size > 0) return;
  while (true) {
    fn(beta);
    std::size_t p = size;
    while (p > 0) {
      --p;
      if (++beta[p] < index_size) break;
      beta[p] = 0;
      if (p == 0) return;
    }
    if (size == 0) return;
  }
}

double power_bound(std::size_t base, std::size_t exponent) {
  return std::pow(static_cast<double>(base), static_cast<double>(exponent));
}

}  // namespace

std::size_t coincidence_count(const SymmetryAction& a, std::size_t index_size, const Assignment& alpha) {
  const auto& c = a.complex();
  require(alpha.size() == c.label_count(), ErrorCode::LocalsNotAligned, "alpha must assign every multifacet");
  const std::size_t n = c.vertex_count();
  std::vector<LocalMap> allowed(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto labels = c.multifacets_at(i);
    Assignment restricted(labels.size());
    for (std::size_t p = 0; p < labels.size(); ++p) restricted[p] = alpha[static_cast<std::size_t>(labels[p])];
    for (auto h : a.vertex_stabilizer(static_cast<int>(i)))
      allowed[i][a.act_assignment(h, i, restricted)] = RadicalPolynomial(local_constant(0, 1));
  }
  std::vector<const LocalMap*> ptrs;
  for (const auto& m : allowed) ptrs.push_back(&m);
  auto count = contract_locals(c, index_size, ptrs, std::vector<unsigned>(n, 0));
  auto value = count.rational_value();
  if (!value) return 0;
  return value->coefficient(Exponent{}).get_num().get_ui();
}

Factorizability factorizability_solve(const SymmetryAction& a, std::size_t index_size, std::size_t max_assignments,
                                      double tol) {
  const auto& c = a.complex();
  const std::size_t n = c.vertex_count();
  if (power_bound(index_size, c.label_count()) > static_cast<double>(max_assignments))
    fail(ErrorCode::SearchSpaceTooLarge, "too many global assignments to enumerate");

  // Unknowns are orbits of (site, beta).
  std::vector<std::map<Assignment, std::size_t>> unknown(n);
  std::size_t unknowns = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (power_bound(index_size, c.multifacets_at(i).size()) > static_cast<double>(max_assignments))
      fail(ErrorCode::SearchSpaceTooLarge, "too many local assignments to enumerate");
    for_each_assignment(c.multifacets_at(i).size(), index_size, [&](const Assignment& beta) {
      if (unknown[i].count(beta)) return;
      for (std::size_t g = 0; g < a.order(); ++g) {
        auto gi = static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)));
        unknown[gi].emplace(a.act_assignment(g, i, beta), unknowns);
      }
      ++unknowns;
    });
  }

  Factorizability out;
  out.index_size = index_size;
  std::vector<std::vector<std::size_t>> rows;
  std::vector<double> rhs;
  for_each_assignment(c.label_count(), index_size, [&](const Assignment& alpha) {
    std::size_t k = coincidence_count(a, index_size, alpha);
    out.multiplicity[alpha] = k;
    std::vector<std::size_t> row;
    for (std::size_t i = 0; i < n; ++i) {
      auto labels = c.multifacets_at(i);
      Assignment restricted(labels.size());
      for (std::size_t p = 0; p < labels.size(); ++p) restricted[p] = alpha[static_cast<std::size_t>(labels[p])];
      row.push_back(unknown[i].at(restricted));
    }
    rows.push_back(std::move(row));
    rhs.push_back(-std::log(static_cast<double>(k)));
  });

  Matrix A = Matrix::Zero(static_cast<long>(rows.size()), static_cast<long>(unknowns));
  Eigen::VectorXd b(static_cast<long>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (auto u : rows[r]) A(static_cast<long>(r), static_cast<long>(u)) += 1.0;
    b(static_cast<long>(r)) = rhs[r];
  }
  Eigen::VectorXd x = unknowns ? Eigen::VectorXd(A.completeOrthogonalDecomposition().solve(b)) : Eigen::VectorXd();
  out.residual = rows.empty() ? 0.0 : (A * x - b).cwiseAbs().maxCoeff();
  out.feasible = out.residual < tol;
  out.c.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [beta, u] : unknown[i]) out.c[i][beta] = std::exp(x(static_cast<long>(u)));
  return out;
}

SosDecomposition sep_to_sos(const SeparableDecomposition& sep, const Factorizability& c) {
  const auto& d = sep.dec;
  const auto& a = d.action();
  const std::size_t n = d.complex().vertex_count();
  require(c.feasible, ErrorCode::NotFactorizable, "the action admits no factorizing constants for this index set");
  require(c.index_size == d.index_size() && c.c.size() == n, ErrorCode::DimensionMismatch,
          "constants were computed for another index set");

  struct Rep {
    std::size_t orbit;
    std::vector<RadicalPolynomial> split;
  };
  std::vector<std::map<Assignment, Rep>> reps(n);
  std::size_t orbits = 0, width = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [beta, value] : d.locals(i)) {
      if (reps[i].count(beta)) continue;
      std::vector<RadicalPolynomial> split;
      const std::vector<RadicalPolynomial>* given = nullptr;
      if (sep.squares.size() == n) {
        auto it = sep.squares[i].find(beta);
        if (it != sep.squares[i].end()) given = &it->second;
      }
      if (given) {
        split = *given;
        require(in_local_cone(value, LocalCone::SumOfSquares, &split), ErrorCode::MissingSquareSplits,
                "supplied square split does not reproduce its local");
      } else {
        auto diag = diagonal_square_split(value);
        require(diag.has_value(), ErrorCode::MissingSquareSplits,
                "local at site " + std::to_string(i) + " has no square split");
        split = std::move(*diag);
      }
      width = std::max(width, split.size());
      for (std::size_t g = 0; g < a.order(); ++g) {
        auto gi = static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)));
        reps[gi].emplace(a.act_assignment(g, i, beta), Rep{orbits, split});
      }
      ++orbits;
    }

  std::vector<std::size_t> grid(n, std::max<std::size_t>(1, orbits * width));
  SosDecomposition out(a, d.index_size(), grid, d.site_vars(), d.scale().root(2));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [beta, rep] : reps[i]) {
      double ci = c.c[i].at(beta);
      Rational root = rational_from_double(std::sqrt(ci));
      for (std::size_t k = 0; k < rep.split.size(); ++k)
        out.add_local(i, rep.orbit * width + k, beta, rep.split[k].scaled(root));
    }
  return out;
}

}  // namespace omega
