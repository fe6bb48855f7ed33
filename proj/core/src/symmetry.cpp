#include "omega/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_set>

#include "omega/error.hpp"

namespace omega {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

void check_permutation(std::span<const int> p, std::size_t size, const char* what) {
  require(p.size() == size, ErrorCode::InvalidPermutation,
          std::string(what) + " permutation has size " + std::to_string(p.size()) + ", expected " +
              std::to_string(size));
  std::vector<bool> seen(size, false);
  for (int x : p) {
    require(x >= 0 && static_cast<std::size_t>(x) < size && !seen[static_cast<std::size_t>(x)],
            ErrorCode::InvalidPermutation, std::string(what) + " map is not a permutation");
    seen[static_cast<std::size_t>(x)] = true;
  }
}

void check_generator(const WeightedComplex& c, const Generator& g) {
  check_permutation(g.vertex_perm, c.vertex_count(), "vertex");
  check_permutation(g.multifacet_perm, c.label_count(), "multifacet");
  std::vector<int> image_facet(c.facets().size());
  for (std::size_t f = 0; f < c.facets().size(); ++f) {
    std::vector<int> image;
    for (int v : c.facets()[f].vertices) image.push_back(g.vertex_perm[static_cast<std::size_t>(v)]);
    std::sort(image.begin(), image.end());
    int target = c.facet_index(image);
    require(target >= 0 && c.facets()[static_cast<std::size_t>(target)].weight == c.facets()[f].weight,
            ErrorCode::WeightNotPreserved, "vertex map does not carry facet " + std::to_string(f) +
                                               " onto a facet of equal weight");
    image_facet[f] = target;
  }
  for (std::size_t l = 0; l < c.label_count(); ++l) {
    int moved = g.multifacet_perm[l];
    require(c.facet_of(moved) == image_facet[static_cast<std::size_t>(c.facet_of(static_cast<int>(l)))],
            ErrorCode::CollapseNotLinear, "multifacet " + std::to_string(l) + " is not sent over the image facet");
  }
}

Generator compose_perms(const Generator& a, const Generator& b) {
  Generator out;
  out.vertex_perm.resize(a.vertex_perm.size());
  out.multifacet_perm.resize(a.multifacet_perm.size());
  for (std::size_t i = 0; i < out.vertex_perm.size(); ++i)
    out.vertex_perm[i] = a.vertex_perm[static_cast<std::size_t>(b.vertex_perm[i])];
  for (std::size_t i = 0; i < out.multifacet_perm.size(); ++i)
    out.multifacet_perm[i] = a.multifacet_perm[static_cast<std::size_t>(b.multifacet_perm[i])];
  return out;
}

Generator identity_of(const WeightedComplex& c) {
  Generator e;
  e.vertex_perm.resize(c.vertex_count());
  e.multifacet_perm.resize(c.label_count());
  std::iota(e.vertex_perm.begin(), e.vertex_perm.end(), 0);
  std::iota(e.multifacet_perm.begin(), e.multifacet_perm.end(), 0);
  return e;
}

}  // namespace

std::size_t SymmetryAction::KeyHash::operator()(const std::vector<int>& v) const noexcept { return VectorHash{}(v); }

std::vector<int> SymmetryAction::key(std::span<const int> vp, std::span<const int> lp) const {
  std::vector<int> k(vp.begin(), vp.end());
  k.insert(k.end(), lp.begin(), lp.end());
  return k;
}

SymmetryAction SymmetryAction::build(WeightedComplex complex, std::vector<Generator> generators,
                                     std::size_t max_group) {
  for (const auto& g : generators) check_generator(complex, g);
  SymmetryAction a;
  a.complex_ = std::move(complex);
  a.generators_ = std::move(generators);
  a.elements_.push_back(identity_of(a.complex_));
  a.lookup_.emplace(a.key(a.elements_[0].vertex_perm, a.elements_[0].multifacet_perm), 0);
  for (std::size_t i = 0; i < a.elements_.size(); ++i) {
    for (const auto& s : a.generators_) {
      Generator prod = compose_perms(s, a.elements_[i]);
      auto k = a.key(prod.vertex_perm, prod.multifacet_perm);
      if (a.lookup_.count(k)) continue;
      if (a.elements_.size() >= max_group)
        fail(ErrorCode::GroupTooLarge, "group exceeds " + std::to_string(max_group) + " elements");
      a.lookup_.emplace(std::move(k), a.elements_.size());
      a.elements_.push_back(std::move(prod));
    }
  }
  a.index_elements();
  return a;
}

SymmetryAction SymmetryAction::trivial(WeightedComplex complex) { return build(std::move(complex), {}); }

SymmetryAction SymmetryAction::from_elements(WeightedComplex complex, std::vector<Generator> generators,
                                             std::vector<Generator> elements) {
  SymmetryAction a;
  a.complex_ = std::move(complex);
  a.generators_ = std::move(generators);
  a.elements_ = std::move(elements);
  for (std::size_t i = 0; i < a.elements_.size(); ++i)
    a.lookup_.emplace(a.key(a.elements_[i].vertex_perm, a.elements_[i].multifacet_perm), i);
  a.index_elements();
  return a;
}

void SymmetryAction::index_elements() {
  const std::size_t n = elements_.size();
  inverse_.assign(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    Generator inv;
    inv.vertex_perm.resize(elements_[g].vertex_perm.size());
    inv.multifacet_perm.resize(elements_[g].multifacet_perm.size());
    for (std::size_t i = 0; i < inv.vertex_perm.size(); ++i)
      inv.vertex_perm[static_cast<std::size_t>(elements_[g].vertex_perm[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < inv.multifacet_perm.size(); ++i)
      inv.multifacet_perm[static_cast<std::size_t>(elements_[g].multifacet_perm[i])] = static_cast<int>(i);
    inverse_[g] = lookup_.at(key(inv.vertex_perm, inv.multifacet_perm));
  }
  table_.clear();
  if (n <= 2048) {
    table_.assign(n, std::vector<std::uint32_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Generator p = compose_perms(elements_[a], elements_[b]);
        table_[a][b] = static_cast<std::uint32_t>(lookup_.at(key(p.vertex_perm, p.multifacet_perm)));
      }
  }
  position_.assign(complex_.vertex_count(), std::vector<int>(complex_.label_count(), -1));
  for (std::size_t s = 0; s < complex_.vertex_count(); ++s) {
    auto labels = complex_.multifacets_at(s);
    for (std::size_t p = 0; p < labels.size(); ++p) position_[s][static_cast<std::size_t>(labels[p])] = static_cast<int>(p);
  }
}

std::size_t SymmetryAction::compose(std::size_t a, std::size_t b) const {
  if (!table_.empty()) return table_[a][b];
  Generator p = compose_perms(elements_[a], elements_[b]);
  return lookup_.at(key(p.vertex_perm, p.multifacet_perm));
}

int SymmetryAction::label_position(std::size_t site, int label) const {
  return position_[site][static_cast<std::size_t>(label)];
}

Assignment SymmetryAction::act_assignment(std::size_t g, std::size_t site, std::span<const std::uint32_t> beta) const {
  auto source = complex_.multifacets_at(site);
  if (beta.size() != source.size()) fail(ErrorCode::LocalsNotAligned, "assignment does not match the multifacets at the site");
  std::size_t target = static_cast<std::size_t>(act_vertex(g, static_cast<int>(site)));
  auto labels = complex_.multifacets_at(target);
  std::size_t ginv = inverse_[g];
  Assignment out(labels.size());
  for (std::size_t p = 0; p < labels.size(); ++p) {
    int pre = act_label(ginv, labels[p]);
    out[p] = beta[static_cast<std::size_t>(position_[site][static_cast<std::size_t>(pre)])];
  }
  return out;
}

std::vector<std::size_t> SymmetryAction::vertex_stabilizer(int v) const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < order(); ++g)
    if (act_vertex(g, v) == v) out.push_back(g);
  return out;
}

std::vector<std::vector<int>> SymmetryAction::label_orbits() const {
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(complex_.label_count(), false);
  for (std::size_t l = 0; l < complex_.label_count(); ++l) {
    if (seen[l]) continue;
    std::vector<int> orbit;
    for (std::size_t g = 0; g < order(); ++g) {
      int m = act_label(g, static_cast<int>(l));
      if (!seen[static_cast<std::size_t>(m)]) {
        seen[static_cast<std::size_t>(m)] = true;
        orbit.push_back(m);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<std::vector<int>> SymmetryAction::vertex_orbits() const {
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(complex_.vertex_count(), false);
  for (std::size_t v = 0; v < complex_.vertex_count(); ++v) {
    if (seen[v]) continue;
    std::vector<int> orbit;
    for (std::size_t g = 0; g < order(); ++g) {
      int u = act_vertex(g, static_cast<int>(v));
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        orbit.push_back(u);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

long SymmetryAction::find_element(std::span<const int> vertex_perm, std::span<const int> label_perm) const {
  auto it = lookup_.find(key(vertex_perm, label_perm));
  return it == lookup_.end() ? -1 : static_cast<long>(it->second);
}

bool is_free(const SymmetryAction& a) {
  for (std::size_t g = 1; g < a.order(); ++g)
    for (std::size_t l = 0; l < a.complex().label_count(); ++l)
      if (a.act_label(g, static_cast<int>(l)) == static_cast<int>(l)) return false;
  return true;
}

bool is_vertex_action_free(const SymmetryAction& a) {
  for (std::size_t g = 1; g < a.order(); ++g)
    for (std::size_t v = 0; v < a.complex().vertex_count(); ++v)
      if (a.act_vertex(g, static_cast<int>(v)) == static_cast<int>(v)) return false;
  return true;
}

bool is_blending(const SymmetryAction& a, std::size_t max_assignments) {
  const std::size_t n = a.complex().vertex_count();
  std::vector<std::vector<int>> orbit_of(n);
  for (const auto& orbit : a.vertex_orbits())
    for (int v : orbit) orbit_of[static_cast<std::size_t>(v)] = orbit;
  double bound = 1.0;
  for (const auto& o : orbit_of) bound *= static_cast<double>(o.size());
  if (bound > static_cast<double>(max_assignments))
    fail(ErrorCode::SearchSpaceTooLarge, "blending search would visit more than " + std::to_string(max_assignments) +
                                             " vertex maps");

  std::unordered_set<std::vector<int>, VectorHash> realized;
  for (std::size_t g = 0; g < a.order(); ++g) {
    auto vp = a.vertex_perm(g);
    realized.emplace(vp.begin(), vp.end());
  }
  std::vector<int> sigma(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == n) return realized.count(sigma) > 0;
    for (int target : orbit_of[i]) {
      if (used[static_cast<std::size_t>(target)]) continue;
      used[static_cast<std::size_t>(target)] = true;
      sigma[i] = target;
      bool ok = rec(i + 1);
      used[static_cast<std::size_t>(target)] = false;
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

SymmetryAction free_refinement(const SymmetryAction& a) {
  const auto& c = a.complex();
  require(c.is_connected(), ErrorCode::NotConnected, "free refinement needs a connected complex");
  const std::size_t order = a.order();
  std::vector<Facet> facets = c.facets();
  for (auto& f : facets) f.weight *= static_cast<int>(order);
  WeightedComplex refined = WeightedComplex::build(facets, static_cast<int>(c.vertex_count()));

  auto new_label = [&](int old_label, std::size_t h) {
    const auto& ml = c.labels()[static_cast<std::size_t>(old_label)];
    return refined.label_index(ml.facet, ml.copy * static_cast<int>(order) + static_cast<int>(h));
  };
  std::vector<Generator> elements(order);
  for (std::size_t g = 0; g < order; ++g) {
    auto vp = a.vertex_perm(g);
    elements[g].vertex_perm.assign(vp.begin(), vp.end());
    elements[g].multifacet_perm.assign(refined.label_count(), -1);
    for (std::size_t l = 0; l < c.label_count(); ++l)
      for (std::size_t h = 0; h < order; ++h)
        elements[g].multifacet_perm[static_cast<std::size_t>(new_label(static_cast<int>(l), h))] =
            new_label(a.act_label(g, static_cast<int>(l)), a.compose(g, h));
  }
  std::vector<Generator> generators;
  for (const auto& gen : a.generators()) {
    long idx = a.find_element(gen.vertex_perm, gen.multifacet_perm);
    generators.push_back(elements[static_cast<std::size_t>(idx)]);
  }
  return SymmetryAction::from_elements(std::move(refined), std::move(generators), std::move(elements));
}

std::vector<std::size_t> linearizer(const SymmetryAction& a) {
  require(is_free(a), ErrorCode::ActionNotFree, "a linearizer exists only for free actions");
  std::vector<std::size_t> z(a.complex().label_count(), 0);
  for (const auto& orbit : a.label_orbits()) {
    int rep = orbit.front();
    for (std::size_t g = 0; g < a.order(); ++g) z[static_cast<std::size_t>(a.act_label(g, rep))] = g;
  }
  return z;
}

namespace {

Generator from_vertex_map(const WeightedComplex& c, const std::vector<int>& vp, bool flip_copies = false) {
  Generator g;
  g.vertex_perm = vp;
  g.multifacet_perm.resize(c.label_count());
  for (std::size_t l = 0; l < c.label_count(); ++l) {
    const auto& ml = c.labels()[l];
    std::vector<int> image;
    for (int v : c.facets()[static_cast<std::size_t>(ml.facet)].vertices) image.push_back(vp[static_cast<std::size_t>(v)]);
    std::sort(image.begin(), image.end());
    int f = c.facet_index(image);
    int w = c.facets()[static_cast<std::size_t>(f)].weight;
    int copy = flip_copies ? (ml.copy + 1) % w : ml.copy;
    g.multifacet_perm[l] = c.label_index(f, copy);
  }
  return g;
}

}  // namespace

SymmetryAction cyclic_rotation(int n) {
  auto c = standard_complex(StandardComplex::Circle, n);
  std::vector<int> vp(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) vp[static_cast<std::size_t>(v)] = (v + 1) % n;
  return SymmetryAction::build(c, {from_vertex_map(c, vp)});
}

SymmetryAction line_reversal(int n) {
  auto c = standard_complex(StandardComplex::Line, n);
  std::vector<int> vp(static_cast<std::size_t>(n + 1));
  for (int v = 0; v <= n; ++v) vp[static_cast<std::size_t>(v)] = n - v;
  return SymmetryAction::build(c, {from_vertex_map(c, vp)});
}

SymmetryAction full_symmetric(int n) {
  auto c = standard_complex(StandardComplex::Simplex, n);
  std::vector<Generator> gens;
  if (n >= 1) {
    std::vector<int> swap(static_cast<std::size_t>(n + 1)), cycle(static_cast<std::size_t>(n + 1));
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (int v = 0; v <= n; ++v) cycle[static_cast<std::size_t>(v)] = (v + 1) % (n + 1);
    gens.push_back(from_vertex_map(c, swap));
    gens.push_back(from_vertex_map(c, cycle));
  }
  return SymmetryAction::build(c, gens);
}

SymmetryAction cyclic_on_simplex(int n) {
  auto c = standard_complex(StandardComplex::Simplex, n);
  std::vector<int> cycle(static_cast<std::size_t>(n + 1));
  for (int v = 0; v <= n; ++v) cycle[static_cast<std::size_t>(v)] = (v + 1) % (n + 1);
  return SymmetryAction::build(c, {from_vertex_map(c, cycle)});
}

SymmetryAction edge_swap(bool double_edge) {
  auto c = standard_complex(double_edge ? StandardComplex::DoubleEdge : StandardComplex::SingleEdge);
  return SymmetryAction::build(c, {from_vertex_map(c, {1, 0}, double_edge)});
}

SymmetryAction double_edge_copy_flip() {
  auto c = standard_complex(StandardComplex::DoubleEdge);
  return SymmetryAction::build(c, {from_vertex_map(c, {0, 1}, true)});
}

}  // namespace omega
