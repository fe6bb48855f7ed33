#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "omega/complex.hpp"

namespace omega {

inline constexpr std::size_t kDefaultMaxGroup = 10080;
inline constexpr std::size_t kDefaultMaxAssignments = 10'000'000;

// Values of a map from the multifacets at one vertex into an index set,
// listed in the order of WeightedComplex::multifacets_at.
using Assignment = std::vector<std::uint32_t>;

struct Generator {
  std::vector<int> vertex_perm;      // g . i
  std::vector<int> multifacet_perm;  // g . label
};

// A finite group acting on the vertices and on the multifacet labels of a
// complex, with the vertex action preserving weighted facets and the collapse
// map equivariant. Elements are numbered with the identity at 0.
class SymmetryAction {
 public:
  SymmetryAction() = default;

  static SymmetryAction build(WeightedComplex complex, std::vector<Generator> generators,
                              std::size_t max_group = kDefaultMaxGroup);
  static SymmetryAction trivial(WeightedComplex complex);

  const WeightedComplex& complex() const { return complex_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  static constexpr std::size_t identity() { return 0; }

  std::size_t compose(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }

  std::span<const int> vertex_perm(std::size_t g) const { return elements_[g].vertex_perm; }
  std::span<const int> label_perm(std::size_t g) const { return elements_[g].multifacet_perm; }
  int act_vertex(std::size_t g, int v) const { return elements_[g].vertex_perm[static_cast<std::size_t>(v)]; }
  int act_label(std::size_t g, int l) const { return elements_[g].multifacet_perm[static_cast<std::size_t>(l)]; }

  // Position of a label inside multifacets_at(site), or -1.
  int label_position(std::size_t site, int label) const;

  // For beta on the multifacets at `site`, returns (g beta)(l) = beta(g^-1 l),
  // which lives on the multifacets at g . site.
  Assignment act_assignment(std::size_t g, std::size_t site, std::span<const std::uint32_t> beta) const;

  std::vector<std::size_t> vertex_stabilizer(int v) const;
  std::vector<std::vector<int>> label_orbits() const;
  std::vector<std::vector<int>> vertex_orbits() const;

  // Element whose vertex and label permutations are the given ones, or -1.
  long find_element(std::span<const int> vertex_perm, std::span<const int> label_perm) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept;
  };

  static SymmetryAction from_elements(WeightedComplex complex, std::vector<Generator> generators,
                                      std::vector<Generator> elements);
  void index_elements();
  std::vector<int> key(std::span<const int> vp, std::span<const int> lp) const;

  WeightedComplex complex_;
  std::vector<Generator> generators_;
  std::vector<Generator> elements_;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::unordered_map<std::vector<int>, std::size_t, KeyHash> lookup_;
  std::vector<std::vector<int>> position_;  // [site][label] -> position or -1

  friend SymmetryAction free_refinement(const SymmetryAction& a);
};

bool is_free(const SymmetryAction& a);
bool is_vertex_action_free(const SymmetryAction& a);

// For every tuple (g_0..g_n) with {g_i . i} = [n] there is one g with g_i . i = g . i.
// Enumerates the permutations i -> g_i . i, bounded by the product of orbit sizes.
bool is_blending(const SymmetryAction& a, std::size_t max_assignments = kDefaultMaxAssignments);

// Same group acting freely on the complex with all weights multiplied by |G|.
SymmetryAction free_refinement(const SymmetryAction& a);

// G-linear map from labels to group elements (free actions): the smallest
// label of each orbit goes to the identity.
std::vector<std::size_t> linearizer(const SymmetryAction& a);

// Standard actions on standard complexes.
SymmetryAction cyclic_rotation(int n);            // C_n on Circle(n)
SymmetryAction line_reversal(int n);              // C_2 on Line(n)
SymmetryAction full_symmetric(int n);             // S_{n+1} on Simplex(n)
SymmetryAction cyclic_on_simplex(int n);          // C_{n+1} on Simplex(n)
SymmetryAction edge_swap(bool double_edge);       // C_2 swapping the two vertices (and the copies on the double edge)
SymmetryAction double_edge_copy_flip();           // C_2 fixing vertices, swapping the two copies

}  // namespace omega
