#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omega/decomposition.hpp"

namespace omega {

using Matrix = Eigen::MatrixXd;

// Exponents of total degree <= d in m variables, graded then lexicographic
// (x_1 before x_2 within a degree).
std::vector<Exponent> local_monomial_basis(unsigned m, unsigned d);

// Gram matrix on the tensor basis of the per-site monomials, site 0 outermost.
struct GramRepresentation {
  unsigned n = 1;  // sites are 0..n
  unsigned m = 1;
  unsigned d = 1;
  Matrix entries;

  std::size_t local_dim() const;
  std::size_t dim() const;
  void validate() const;
};

// M -> m_d(x)^T M m_d(x).
FloatPolynomial gram_map(const GramRepresentation& g);

// (g M)_{h,h'} = M_{s(h), s(h')} with s(h)_i = h_{g i}; gram_map(gM) = g . gram_map(M).
Matrix act_gram(std::size_t g, const GramRepresentation& m, const SymmetryAction& a);
double gram_invariance_defect(const GramRepresentation& m, const SymmetryAction& a);
// Average of g M over the group; requires gram_map(M) invariant within tol.
GramRepresentation gram_symmetrize(const GramRepresentation& m, const SymmetryAction& a, double tol = 1e-9);

double min_eigenvalue(const Matrix& m);
bool is_psd(const Matrix& m, double tol = 1e-9);
// Symmetric PSD square root; negative eigenvalues above -tol are clamped.
Matrix psd_sqrt(const Matrix& m);

enum class ConeKind { NonnegativeCoefficients, SosWithCertificate, NonnegativeSampled };

struct ConeVerdict {
  ConeKind kind;
  bool holds = false;
  bool conclusive = true;  // false for "no counterexample found"
  std::optional<std::vector<double>> witness;
  std::string detail;
};

ConeVerdict check_nonnegative_coefficients(const Polynomial& p);
ConeVerdict check_sos_certificate(const FloatPolynomial& p, const GramRepresentation* certificate, double tol = 1e-9);
ConeVerdict check_nonnegative_sampled(const FloatPolynomial& p, std::size_t samples = 2000, std::uint64_t seed = 1);

// Family q_k indexed by S^{n+1}, S = local monomial indices, flattened with
// site 0 outermost.
struct SosFamily {
  unsigned n = 1, m = 1, d = 1;
  std::vector<FloatPolynomial> members;

  std::size_t local_dim() const;
  std::vector<std::size_t> unflatten(std::size_t k) const;
  std::size_t flatten(const std::vector<std::size_t>& k) const;
};

// (g k)_i = k_{g^-1 i}.
std::vector<std::size_t> act_family_index(std::size_t g, const std::vector<std::size_t>& k, const SymmetryAction& a);

// q_k = rows of B m(x) for the PSD root B of an invariant PSD Gram matrix.
SosFamily invariant_sos_family(const GramRepresentation& m, const SymmetryAction& a, double tol = 1e-9);
double family_invariance_defect(const SosFamily& f, const SymmetryAction& a);
FloatPolynomial sum_of_squares(const SosFamily& f);

// q_k = sum_j prod_i locals[i][(k_i, j)](x^[i]): every factor depends on its own k_i only.
struct ElementaryFamily {
  std::vector<unsigned> site_vars;
  std::vector<std::size_t> grid;  // |S_i|
  std::size_t terms = 0;
  std::vector<std::map<std::pair<std::size_t, std::size_t>, RadicalPolynomial>> locals;
};

RadicalPolynomial family_member(const ElementaryFamily& f, const std::vector<std::size_t>& k);
// Matrix-unit expansion of the rows of B m(x), converted exactly from binary64.
ElementaryFamily elementary_family(const Matrix& root, unsigned n, unsigned m, unsigned d);

// Decomposition of a family: q_k = s^(n+1) sum_alpha prod_i q^[i]_{k_i, alpha|i}.
class SosDecomposition {
 public:
  using Key = std::pair<std::size_t, Assignment>;

  SosDecomposition() = default;
  SosDecomposition(SymmetryAction action, std::size_t index_size, std::vector<std::size_t> grid,
                   std::vector<unsigned> site_vars, ScaledScalar scale = {});

  const SymmetryAction& action() const { return action_; }
  const WeightedComplex& complex() const { return action_.complex(); }
  std::size_t index_size() const { return index_size_; }
  const std::vector<std::size_t>& grid() const { return grid_; }
  const std::vector<unsigned>& site_vars() const { return site_vars_; }
  const ScaledScalar& scale() const { return scale_; }

  void add_local(std::size_t site, std::size_t k, const Assignment& beta, const RadicalPolynomial& value);
  const RadicalPolynomial* local(std::size_t site, std::size_t k, const Assignment& beta) const;
  const std::map<Key, RadicalPolynomial>& locals(std::size_t site) const { return locals_[site]; }
  std::size_t family_size() const;

 private:
  SymmetryAction action_;
  std::size_t index_size_ = 0;
  std::vector<std::size_t> grid_;
  std::vector<unsigned> site_vars_;
  ScaledScalar scale_;
  std::vector<std::map<Key, RadicalPolynomial>> locals_;
};

RadicalPolynomial contract_member(const SosDecomposition& d, const std::vector<std::size_t>& k,
                                  const ContractOptions& options = {});
// Sum of squares of every member, by enumerating the family.
RadicalPolynomial sum_of_squares(const SosDecomposition& d, const ContractOptions& options = {});
// q^[g i]_{k_i, g beta} == q^[i]_{k_i, beta}.
bool check_symmetry(const SosDecomposition& d);

// Free symmetrization of an invariant family; index set J x G.
SosDecomposition family_symmetrize(const ElementaryFamily& f, const SymmetryAction& a);

// Plain decomposition of sum_k q_k^2 with index set I x I.
OmegaGDecomposition sos_to_plain(const SosDecomposition& d);

struct Factorizability {
  bool feasible = false;
  double residual = 0.0;
  std::size_t index_size = 0;
  // C^[i]_beta for every beta in I^{multifacets at i}.
  std::vector<std::map<Assignment, double>> c;
  // K_alpha for every alpha, keyed by the values on all labels.
  std::map<Assignment, std::size_t> multiplicity;
};

// K_alpha = #{gamma : for every i some g_i fixing i has (g_i gamma)|_i = alpha|_i}.
std::size_t coincidence_count(const SymmetryAction& a, std::size_t index_size, const Assignment& alpha);

// Least-squares solve of sum_i log C^[i]_{alpha|i} = -log K_alpha over invariant C.
Factorizability factorizability_solve(const SymmetryAction& a, std::size_t index_size,
                                      std::size_t max_assignments = kDefaultMaxAssignments, double tol = 1e-9);

// Sum-of-squares decomposition with the same index set, built from square
// splits of the locals and the factorizability constants.
SosDecomposition sep_to_sos(const SeparableDecomposition& sep, const Factorizability& c);

// |G| * C(d+m, d)^(n+1).
Integer caratheodory_bound(std::size_t group_order, unsigned m, unsigned d, unsigned n);

}  // namespace omega
