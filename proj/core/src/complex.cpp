#include "omega/complex.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "omega/error.hpp"

namespace omega {

namespace {

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

WeightedComplex WeightedComplex::build(std::vector<Facet> facets, int vertex_count) {
  WeightedComplex c;
  require(!facets.empty(), ErrorCode::EmptyFacet, "complex has no facets");
  int max_vertex = -1;
  for (auto& f : facets) {
    require(!f.vertices.empty(), ErrorCode::EmptyFacet, "facet with no vertices");
    require(f.weight >= 1, ErrorCode::InvalidSize, "facet weight must be a positive integer");
    std::sort(f.vertices.begin(), f.vertices.end());
    require(std::adjacent_find(f.vertices.begin(), f.vertices.end()) == f.vertices.end(), ErrorCode::InvalidSize,
            "facet repeats a vertex");
    require(f.vertices.front() >= 0, ErrorCode::VertexOutOfRange, "negative vertex index");
    max_vertex = std::max(max_vertex, f.vertices.back());
  }
  if (vertex_count < 0) vertex_count = max_vertex + 1;
  require(max_vertex < vertex_count, ErrorCode::VertexOutOfRange,
          "vertex " + std::to_string(max_vertex) + " outside [0," + std::to_string(vertex_count - 1) + "]");

  for (std::size_t a = 0; a < facets.size(); ++a)
    for (std::size_t b = 0; b < facets.size(); ++b)
      if (a != b && is_subset(facets[a].vertices, facets[b].vertices))
        fail(ErrorCode::NonMaximalFacet, "facet " + std::to_string(a) + " is contained in facet " + std::to_string(b));

  c.vertex_count_ = static_cast<std::size_t>(vertex_count);
  c.facets_ = std::move(facets);
  c.labels_at_.assign(c.vertex_count_, {});
  c.facets_at_.assign(c.vertex_count_, {});
  for (std::size_t f = 0; f < c.facets_.size(); ++f) {
    c.label_start_.push_back(static_cast<int>(c.labels_.size()));
    for (int k = 0; k < c.facets_[f].weight; ++k) {
      int label = static_cast<int>(c.labels_.size());
      c.labels_.push_back({static_cast<int>(f), k});
      for (int v : c.facets_[f].vertices) c.labels_at_[static_cast<std::size_t>(v)].push_back(label);
    }
    for (int v : c.facets_[f].vertices) c.facets_at_[static_cast<std::size_t>(v)].push_back(static_cast<int>(f));
  }
  for (std::size_t v = 0; v < c.vertex_count_; ++v)
    require(!c.facets_at_[v].empty(), ErrorCode::UncoveredVertex, "vertex " + std::to_string(v) + " lies in no facet");
  require(c.divisibility_holds(), ErrorCode::DivisibilityViolation, "derived weights violate divisibility");
  return c;
}

int WeightedComplex::label_index(int facet, int copy) const {
  if (facet < 0 || static_cast<std::size_t>(facet) >= facets_.size()) return -1;
  if (copy < 0 || copy >= facets_[static_cast<std::size_t>(facet)].weight) return -1;
  return label_start_[static_cast<std::size_t>(facet)] + copy;
}

int WeightedComplex::facet_index(std::span<const int> sorted_vertices) const {
  for (std::size_t f = 0; f < facets_.size(); ++f)
    if (std::equal(facets_[f].vertices.begin(), facets_[f].vertices.end(), sorted_vertices.begin(),
                   sorted_vertices.end()))
      return static_cast<int>(f);
  return -1;
}

long WeightedComplex::omega(std::span<const int> simplex) const {
  std::vector<int> s(simplex.begin(), simplex.end());
  std::sort(s.begin(), s.end());
  long g = 0;
  for (const auto& f : facets_)
    if (is_subset(s, f.vertices)) g = std::gcd(g, static_cast<long>(f.weight));
  return g;
}

bool WeightedComplex::divisibility_holds(std::size_t face_limit) const {
  std::vector<std::vector<int>> faces;
  for (const auto& f : facets_) {
    if (f.vertices.size() >= 20) return true;
    std::size_t subsets = std::size_t{1} << f.vertices.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      std::vector<int> s;
      for (std::size_t b = 0; b < f.vertices.size(); ++b)
        if (mask >> b & 1) s.push_back(f.vertices[b]);
      faces.push_back(std::move(s));
      if (faces.size() > face_limit) return true;
    }
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::vector<long> w(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) w[i] = omega(faces[i]);
  for (std::size_t a = 0; a < faces.size(); ++a)
    for (std::size_t b = 0; b < faces.size(); ++b)
      if (faces[a].size() < faces[b].size() && is_subset(faces[a], faces[b]) && w[b] % w[a] != 0) return false;
  return true;
}

bool WeightedComplex::is_connected() const {
  if (vertex_count_ == 0) return true;
  std::vector<bool> seen(vertex_count_, false);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop();
    for (int f : facets_at_[static_cast<std::size_t>(v)])
      for (int u : facets_[static_cast<std::size_t>(f)].vertices)
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = true;
          ++count;
          todo.push(u);
        }
  }
  return count == vertex_count_;
}

WeightedComplex standard_complex(StandardComplex kind, int n) {
  std::vector<Facet> facets;
  switch (kind) {
    case StandardComplex::Simplex: {
      require(n >= 0, ErrorCode::InvalidSize, "simplex dimension must be nonnegative");
      Facet f;
      for (int v = 0; v <= n; ++v) f.vertices.push_back(v);
      facets.push_back(f);
      return WeightedComplex::build(facets, n + 1);
    }
    case StandardComplex::Line:
      require(n >= 1, ErrorCode::InvalidSize, "line needs at least one edge");
      for (int v = 0; v < n; ++v) facets.push_back({{v, v + 1}, 1});
      return WeightedComplex::build(facets, n + 1);
    case StandardComplex::Circle:
      require(n >= 3, ErrorCode::InvalidSize, "circle needs at least three vertices");
      for (int v = 0; v < n; ++v) facets.push_back({{v, (v + 1) % n}, 1});
      return WeightedComplex::build(facets, n);
    case StandardComplex::DoubleEdge:
      return WeightedComplex::build({{{0, 1}, 2}}, 2);
    case StandardComplex::SingleEdge:
      return WeightedComplex::build({{{0, 1}, 1}}, 2);
  }
  fail(ErrorCode::InvalidArgument, "unknown standard complex");
}

}  // namespace omega
