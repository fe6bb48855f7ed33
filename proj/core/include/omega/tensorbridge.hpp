#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "omega/positivity.hpp"

namespace omega {

template <class T>
struct DenseTensor {
  std::vector<std::size_t> dims;
  std::vector<T> entries;  // row-major, axis 0 outermost

  DenseTensor() = default;
  explicit DenseTensor(std::vector<std::size_t> d) : dims(std::move(d)), entries(count(dims), T(0)) {}

  static std::size_t count(const std::vector<std::size_t>& d) {
    std::size_t out = 1;
    for (auto x : d) out *= x;
    return out;
  }
  std::size_t size() const { return entries.size(); }
  std::size_t flat(const std::vector<std::size_t>& idx) const {
    std::size_t out = 0;
    for (std::size_t a = 0; a < dims.size(); ++a) out = out * dims[a] + idx[a];
    return out;
  }
  std::vector<std::size_t> unflat(std::size_t k) const {
    std::vector<std::size_t> idx(dims.size());
    for (std::size_t a = dims.size(); a-- > 0;) {
      idx[a] = k % dims[a];
      k /= dims[a];
    }
    return idx;
  }
  const T& at(const std::vector<std::size_t>& idx) const { return entries[flat(idx)]; }
  T& at(const std::vector<std::size_t>& idx) { return entries[flat(idx)]; }
  bool operator==(const DenseTensor& o) const { return dims == o.dims && entries == o.entries; }
};

using RationalTensor = DenseTensor<Rational>;
using RationalMatrix = std::vector<std::vector<Rational>>;

// p_T = sum_j T_j prod_i (x^[i]_{j_i})^2.
Polynomial poly_from_tensor(const RationalTensor& t);
// Inverse of poly_from_tensor; NotCanonicalForm for any other monomial.
RationalTensor tensor_from_poly(const Polynomial& p);

struct TensorPositivity {
  bool nonnegative = true;
  Rational min_value;
  std::vector<std::size_t> argmin;
};
// p_T(e_j) = T_j, so T >= 0 exactly when p_T >= 0.
TensorPositivity tensor_positivity(const RationalTensor& t);

enum class TensorVariant { Plain, Nonnegative, Psd };

struct TensorDecomposition {
  TensorVariant variant = TensorVariant::Plain;
  SymmetryAction action;
  std::size_t index_size = 0;
  std::vector<std::size_t> dims;  // m per site
  // Plain and nonnegative: vector in R^m per (site, beta).
  std::vector<std::map<Assignment, std::vector<Rational>>> vectors;
  // Psd: factors[site][j] is a square matrix over I^{multifacets at site},
  // rows and columns in lexicographic order of the assignment.
  std::vector<std::vector<RationalMatrix>> factors;
};

// Lexicographic rank of beta in I^{|beta|}.
std::size_t assignment_rank(const Assignment& beta, std::size_t index_size);
Assignment assignment_unrank(std::size_t rank, std::size_t length, std::size_t index_size);

RationalTensor contract_tensor(const TensorDecomposition& d, std::size_t max_assignments = kDefaultMaxAssignments);
bool check_tensor_symmetry(const TensorDecomposition& d);

// Plain / nonnegative: locals sum_j V_j x_j^2, same index set.
OmegaGDecomposition tensor_to_poly(const TensorDecomposition& d);
TensorDecomposition poly_to_tensor(const OmegaGDecomposition& d, TensorVariant variant);
// Psd factors to a sum-of-squares decomposition of p_T with the same index set;
// uses exact LDL^T splits and needs a free vertex action.
SosDecomposition psd_to_sos(const TensorDecomposition& d);
// Sum-of-squares decomposition of p_T with linear locals to psd factors E = B^T B.
TensorDecomposition sos_to_psd(const SosDecomposition& d);

// Exact E = sum_k d_k l_k l_k^T with d_k > 0; NotPSD otherwise.
std::vector<std::pair<Rational, std::vector<Rational>>> ldl_split(const RationalMatrix& e);

// (i - j)^2 for i, j in 1..m.
RationalTensor distance_matrix(std::size_t m);
// Factors E_i = (1,i)(1,i)^T and F_j = (j,-1)(j,-1)^T on the single edge.
TensorDecomposition psd_distance_factorization(std::size_t m);
// Slack matrix of the regular m-gon: S_ij = b_i - a_i . v_j.
Matrix polygon_slack(std::size_t m);
std::size_t numeric_rank(const Matrix& m, double rel_tol = 1e-8);

// ceil(log2(number of distinct row supports)) is a lower bound on nonnegative rank.
std::size_t nn_rank_support_bound(const Matrix& m);

struct NmfResult {
  std::size_t rank = 0;
  double residual = 0.0;  // relative Frobenius error of the best factorization at that rank
};
// Smallest r whose multiplicative-update factorization reaches rel_tol; falls
// back to the trivial exact factorization of size min(rows, cols).
NmfResult nn_rank_upper_heuristic(const Matrix& m, std::size_t restarts = 50, std::uint64_t seed = 1,
                                  double rel_tol = 1e-6, std::size_t iterations = 500);

struct SeparationRow {
  std::size_t m = 0;
  std::size_t plain_rank = 0;        // exact bipartite rank of p_{M_m}
  std::size_t psd_index = 0;         // index of the psd factorization
  bool psd_identity_exact = false;   // the psd factorization reproduces M_m exactly
  std::size_t nn_lower = 0;
  std::size_t nn_upper_heuristic = 0;
  double nn_upper_residual = 0.0;
  std::size_t slack_rank = 0;
  bool slack_incidence_zero = false;
};
SeparationRow rank_separations(std::size_t m, std::uint64_t seed = 1, std::size_t restarts = 50);

}  // namespace omega
