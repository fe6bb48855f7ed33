#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "omega/positivity.hpp"

namespace omega {

// Adds x_0 to every site so that each block becomes homogeneous of degree d.
Polynomial homogenize(const Polynomial& p, unsigned d);
FloatPolynomial homogenize(const FloatPolynomial& p, unsigned d);

struct NormEstimate {
  double value = 0.0;
  std::vector<double> point;  // one unit vector per site, concatenated
};

// Lower bound on max |p| over products of unit spheres: Gaussian samples per
// site followed by coordinate ascent with step halving.
NormEstimate infinity_norm_lower(const FloatPolynomial& p, std::size_t samples = 500, std::uint64_t seed = 1,
                                 std::size_t polish_iterations = 200);

struct GramNormBounds {
  double sigma_max = 0.0;
  double schatten2 = 0.0;
};
GramNormBounds gram_norm_bounds(const Matrix& m);

// M = sum_j w_j (A_j^[0] (x) ... (x) A_j^[n]) with PSD factors.
struct SeparableGram {
  unsigned n = 1, m = 1, d = 1;
  std::vector<double> weights;
  std::vector<std::vector<Matrix>> factors;  // [term][site]

  void validate(double tol = 1e-9) const;
  Matrix assemble() const;
  double trace() const;
};

// Trace of the witness, an upper bound for the separable cone norm.
double mu_upper(const SeparableGram& g);

// Number of samples giving expected Schatten-2 error at most epsilon.
std::size_t maurey_samples(double epsilon);

struct ApproxResult {
  SeparableDecomposition decomposition;
  Matrix approximant;  // G-average of the sampled matrix
  double error = 0.0;  // Schatten-2 distance to M
  std::size_t samples = 0;
  std::size_t terms_used = 0;
  std::size_t index_budget = 0;
  bool verbatim = false;  // the witness itself was symmetrized, no sampling
};

// Samples k terms with probability proportional to trace, averages over the
// group and returns the separable decomposition of the resulting polynomial.
// A witness with at most k terms is used as is unless always_sample is set.
ApproxResult approx_separable(const SeparableGram& g, const SymmetryAction& a, double epsilon, std::uint64_t seed,
                              std::optional<std::size_t> samples = std::nullopt, bool always_sample = false);

// Random invariant witness for C_2 on two sites: each of the random terms is
// followed by its swapped copy, so 2 * terms entries; normalized to trace 1.
SeparableGram random_invariant_witness(unsigned m, unsigned d, std::size_t terms, std::uint64_t seed);

}  // namespace omega
