#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "omega/polynomial.hpp"
#include "omega/radical.hpp"
#include "omega/symmetry.hpp"

namespace omega {

// One factor per site, each a single-site polynomial in that site's variables.
using ElementaryTerm = std::vector<RadicalPolynomial>;
using LocalMap = std::map<Assignment, RadicalPolynomial>;

struct ContractOptions {
  std::size_t max_nodes = kDefaultMaxAssignments;
};

// p = s^(n+1) * sum over alpha in I^{multifacets} of prod_i p^[i]_{alpha|i}(x^[i]).
// Locals are stored sparsely: a missing (site, beta) means the zero polynomial.
// The scale s multiplies every local, so symmetry is unaffected by it.
class OmegaGDecomposition {
 public:
  OmegaGDecomposition() = default;
  OmegaGDecomposition(SymmetryAction action, std::size_t index_size, std::vector<unsigned> site_vars,
                      ScaledScalar scale = {});

  const SymmetryAction& action() const { return action_; }
  const WeightedComplex& complex() const { return action_.complex(); }
  std::size_t index_size() const { return index_size_; }
  const std::vector<unsigned>& site_vars() const { return site_vars_; }
  const ScaledScalar& scale() const { return scale_; }
  void set_scale(const ScaledScalar& s) { scale_ = s; }

  // Adds value to the local at (site, beta).
  void add_local(std::size_t site, const Assignment& beta, const RadicalPolynomial& value);
  void add_local(std::size_t site, const Assignment& beta, const Polynomial& value);

  const RadicalPolynomial* local(std::size_t site, const Assignment& beta) const;
  const LocalMap& locals(std::size_t site) const { return locals_[site]; }
  std::size_t nonzero_count() const;
  bool empty() const { return nonzero_count() == 0; }

 private:
  void check(std::size_t site, const Assignment& beta) const;

  SymmetryAction action_;
  std::size_t index_size_ = 0;
  std::vector<unsigned> site_vars_;
  ScaledScalar scale_;
  std::vector<LocalMap> locals_;
};

// Sum over alpha of prod_i locals[i][alpha|i], without any scale.
RadicalPolynomial contract_locals(const WeightedComplex& complex, std::size_t index_size,
                                  const std::vector<const LocalMap*>& locals, const std::vector<unsigned>& site_vars,
                                  const ContractOptions& options = {});

RadicalPolynomial contract(const OmegaGDecomposition& d, const ContractOptions& options = {});

// p^[g i]_{g beta} == p^[i]_beta for all g, i, beta.
bool check_symmetry(const OmegaGDecomposition& d);

RadicalPolynomial elementary_sum(const std::vector<ElementaryTerm>& terms, const std::vector<unsigned>& site_vars);

// p^[i]_beta = p_j^[i] when beta is constant with value j, zero otherwise.
// Requires a connected complex; the result carries the trivial action.
OmegaGDecomposition from_elementary(const std::vector<ElementaryTerm>& terms, const WeightedComplex& complex,
                                    const std::vector<unsigned>& site_vars);

// Free symmetrization with index set I x G. The contraction is the G-average of
// the elementary sum, which equals it when that sum is invariant.
OmegaGDecomposition average_free(const std::vector<ElementaryTerm>& terms, const SymmetryAction& action,
                                 const std::vector<unsigned>& site_vars);
// As average_free, additionally requiring an invariant input (NotInvariant otherwise).
OmegaGDecomposition symmetrize_free(const std::vector<ElementaryTerm>& terms, const SymmetryAction& action,
                                    const std::vector<unsigned>& site_vars);

enum class LocalCone { NonnegativeCoefficients, SumOfSquares };

struct SeparableTerm {
  std::vector<RadicalPolynomial> factors;
  // Optional per-factor square splits: factors[i] == sum of squares[i][k]^2.
  std::vector<std::vector<RadicalPolynomial>> squares;
};

struct SeparableDecomposition {
  OmegaGDecomposition dec;
  LocalCone cone = LocalCone::SumOfSquares;
  // Square splits for the stored locals, when known.
  std::vector<std::map<Assignment, std::vector<RadicalPolynomial>>> squares;
};

// Cone membership of a single local. For sums of squares a supplied split is
// verified exactly; otherwise a diagonal certificate (even exponents,
// nonnegative coefficients) is looked for. Nonnegative coefficients are tested
// group by group, which is sufficient.
bool in_local_cone(const RadicalPolynomial& local, LocalCone cone, const std::vector<RadicalPolynomial>* squares = nullptr);

// Square split of a local with a diagonal certificate, if it has one.
std::optional<std::vector<RadicalPolynomial>> diagonal_square_split(const RadicalPolynomial& local);

SeparableDecomposition separable_symmetrize(const std::vector<SeparableTerm>& terms, const SymmetryAction& action,
                                            const std::vector<unsigned>& site_vars, LocalCone cone,
                                            bool require_invariant = true);

// Index set I1 + I2 (direct sum) and I1 x I2 (product); both preserve symmetry.
OmegaGDecomposition direct_sum(const OmegaGDecomposition& a, const OmegaGDecomposition& b);
OmegaGDecomposition product(const OmegaGDecomposition& a, const OmegaGDecomposition& b);

// Polarization of the permutation indicator on {0..n}^{n+1}: vectors
// v = e_0 + sum eps_i e_i with sign prod eps_i and common weight 1/2^n.
struct SignedVector {
  int sign;
  std::vector<int> coeffs;
};
std::vector<SignedVector> symmetric_indicator_split(int n);

struct BlendingDifference {
  OmegaGDecomposition positive;
  OmegaGDecomposition negative;
};

// Invariant p = contract(positive) - contract(negative) for blending actions.
// The negative part is empty when n is even.
BlendingDifference blending_difference(const std::vector<ElementaryTerm>& terms, const SymmetryAction& action,
                                       const std::vector<unsigned>& site_vars,
                                       std::size_t max_assignments = kDefaultMaxAssignments);

// Helpers for single-site polynomials.
Polynomial local_constant(unsigned vars, const Rational& c);
Polynomial local_monomial(const Exponent& e, const Rational& c);
RadicalPolynomial square(const RadicalPolynomial& p);

}  // namespace omega
