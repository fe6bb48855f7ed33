#include <string>

#include "omega/decomposition.hpp"
#include "omega/error.hpp"

namespace omega {

std::vector<SignedVector> symmetric_indicator_split(int n) {
  require(n >= 0, ErrorCode::InvalidSize, "n must be nonnegative");
  require(n <= 8, ErrorCode::SizeTooLarge, "indicator split is limited to n <= 8");
  std::vector<SignedVector> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    SignedVector v{1, std::vector<int>(static_cast<std::size_t>(n + 1), 1)};
    for (int i = 1; i <= n; ++i)
      if (mask >> (i - 1) & 1u) {
        v.coeffs[static_cast<std::size_t>(i)] = -1;
        v.sign = -v.sign;
      }
    out.push_back(std::move(v));
  }
  return out;
}

BlendingDifference blending_difference(const std::vector<ElementaryTerm>& terms, const SymmetryAction& action,
                                       const std::vector<unsigned>& site_vars, std::size_t max_assignments) {
  const auto& c = action.complex();
  require(c.is_connected(), ErrorCode::NotConnected, "complex must be connected");
  require(is_blending(action, max_assignments), ErrorCode::ActionNotBlending, "action is not blending");
  std::vector<std::vector<Polynomial>> rational(terms.size());
  for (std::size_t j = 0; j < terms.size(); ++j) {
    require(terms[j].size() == site_vars.size(), ErrorCode::DimensionMismatch, "one factor per site expected");
    for (std::size_t i = 0; i < site_vars.size(); ++i) {
      if (terms[j][i].is_zero()) {
        rational[j].push_back(local_constant(site_vars[i], 0));
        continue;
      }
      auto v = terms[j][i].rational_value();
      require(v.has_value(), ErrorCode::InvalidArgument, "blending needs rational elementary factors");
      require(v->sites() == std::vector<unsigned>{site_vars[i]}, ErrorCode::IncompatibleBlockSizes,
              "factor does not live on its site's variables");
      rational[j].push_back(*v);
    }
  }
  require(is_invariant(elementary_sum(terms, site_vars), action), ErrorCode::NotInvariant,
          "the elementary sum is not invariant under the action");

  const int n = c.n();
  const std::size_t order = action.order();
  // The difference equals 2^n * prod_t |Stab(t)| * |G| / |kernel| times p.
  Integer factor = Integer(1) << static_cast<unsigned>(n);
  for (int t = 0; t <= n; ++t) factor *= static_cast<unsigned long>(action.vertex_stabilizer(t).size());
  std::size_t kernel = 0;
  for (std::size_t g = 0; g < order; ++g) {
    bool fixes = true;
    for (int v = 0; v <= n; ++v) fixes = fixes && action.act_vertex(g, v) == v;
    kernel += fixes ? 1 : 0;
  }
  factor *= static_cast<unsigned long>(order);
  factor /= static_cast<unsigned long>(kernel);
  ScaledScalar scale(Rational(Integer(1), factor), static_cast<unsigned>(n + 1));

  std::vector<std::vector<int>> positive, negative;
  for (auto& v : symmetric_indicator_split(n)) {
    if (v.sign < 0 && n % 2 == 0) {
      for (auto& x : v.coeffs) x = -x;
      v.sign = 1;
    }
    (v.sign > 0 ? positive : negative).push_back(v.coeffs);
  }

  const std::size_t r = terms.size();
  auto build = [&](const std::vector<std::vector<int>>& vectors) {
    OmegaGDecomposition d(action, vectors.size() * r, site_vars, scale);
    for (std::size_t l = 0; l < vectors.size(); ++l)
      for (std::size_t i = 0; i < site_vars.size(); ++i)
        for (std::size_t j = 0; j < r; ++j) {
          Polynomial local = local_constant(site_vars[i], 0);
          for (std::size_t g = 0; g < order; ++g) {
            auto gi = static_cast<std::size_t>(action.act_vertex(g, static_cast<int>(i)));
            local += rational[j][gi] * Rational(vectors[l][gi]);
          }
          if (!local.is_zero())
            d.add_local(i, Assignment(c.multifacets_at(i).size(), static_cast<std::uint32_t>(l * r + j)), local);
        }
    return d;
  };
  return {build(positive), build(negative)};
}

}  // namespace omega
