#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace omega {

struct Facet {
  std::vector<int> vertices;  // sorted, distinct
  int weight = 1;
};

// Copy `copy` of facet `facet`; labels are numbered in lexicographic order.
struct MultifacetLabel {
  int facet = 0;
  int copy = 0;
};

// Weighted simplicial complex on vertices 0..n. Weights of non-facet simplices
// are derived as the gcd of the weights of the facets containing them.
class WeightedComplex {
 public:
  WeightedComplex() = default;

  // vertex_count < 0 derives the count from the largest vertex mentioned.
  static WeightedComplex build(std::vector<Facet> facets, int vertex_count = -1);

  std::size_t vertex_count() const { return vertex_count_; }
  int n() const { return static_cast<int>(vertex_count_) - 1; }

  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<MultifacetLabel>& labels() const { return labels_; }
  std::size_t label_count() const { return labels_.size(); }

  // Sorted label indices of the multifacets containing vertex i.
  std::span<const int> multifacets_at(std::size_t i) const { return labels_at_[i]; }
  std::span<const int> facets_at(std::size_t i) const { return facets_at_[i]; }

  int facet_of(int label) const { return labels_[static_cast<std::size_t>(label)].facet; }
  int label_index(int facet, int copy) const;
  int facet_index(std::span<const int> sorted_vertices) const;

  // Weight of an arbitrary simplex: gcd over the facets containing it, 0 if none.
  long omega(std::span<const int> simplex) const;
  // Exhaustive check of Omega(S) | Omega(S') for S contained in S', up to the
  // given face-count limit.
  bool divisibility_holds(std::size_t face_limit = 1u << 16) const;

  bool is_connected() const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Facet> facets_;
  std::vector<MultifacetLabel> labels_;
  std::vector<int> label_start_;
  std::vector<std::vector<int>> labels_at_;
  std::vector<std::vector<int>> facets_at_;
};

enum class StandardComplex { Simplex, Line, Circle, DoubleEdge, SingleEdge };

// Simplex(n): one facet on n+1 vertices. Line(n): n edges on n+1 vertices.
// Circle(n): n edges on n vertices. DoubleEdge / SingleEdge: one edge of weight 2 / 1.
WeightedComplex standard_complex(StandardComplex kind, int n = 1);

}  // namespace omega
