#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omega/rational.hpp"

namespace omega {

inline constexpr std::size_t kDefaultMaxTensorEntries = 10'000'000;

// Local coefficients p_{alpha, beta, j}: the polynomial sum_j p_{alpha,beta,j} x_j^2
// placed on every edge of the circle.
struct LocalFamily {
  std::size_t D = 1;
  std::size_t m = 1;
  std::vector<std::vector<std::vector<Integer>>> coeffs;  // [alpha][beta][j]

  void validate() const;
};

using IntegerMatrix = std::vector<std::vector<Integer>>;

// A_j with (A_j)_{alpha,beta} = p_{alpha,beta,j}.
std::vector<IntegerMatrix> transfer_matrices(const LocalFamily& f);

// T_n(j_0..j_n) = trace(A_{j_0} ... A_{j_n}); entries listed with j_0 outermost.
std::vector<Integer> transfer_tensor(const LocalFamily& f, std::size_t n,
                                     std::size_t max_entries = kDefaultMaxTensorEntries);
// Direct expansion over all cyclic index sequences alpha.
std::vector<Integer> brute_force_tensor(const LocalFamily& f, std::size_t n);

struct FamilyStep {
  std::size_t n = 0;
  Integer min_entry;
  std::vector<std::size_t> argmin;  // 1-based axis values
};

struct FamilyReport {
  bool violation = false;
  std::size_t n_min = 0, n_max = 0;
  std::optional<std::size_t> first_violation;
  std::vector<std::size_t> witness;  // 1-based
  Integer witness_value;
  std::vector<FamilyStep> steps;
  std::string disclaimer;
};

// Checks n = n_min..n_max in order and stops at the first negative entry.
// Passing says nothing about larger n: positivity for all n is undecidable in general.
FamilyReport bounded_positivity_check(const LocalFamily& f, std::size_t n_max, std::size_t n_min = 0,
                                      std::size_t max_entries = kDefaultMaxTensorEntries);

extern const char* const kUndecidabilityNote;

}  // namespace omega
