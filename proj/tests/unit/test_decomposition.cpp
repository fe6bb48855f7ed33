#include "omega/decomposition.hpp"

#include <random>

#include "test_support.hpp"

namespace omega {
namespace {

using test::error_of;
using test::local;
using test::radical;

OmegaGDecomposition double_edge_example() {
  OmegaGDecomposition d(edge_swap(true), 2, {1, 1});
  std::map<Assignment, RadicalPolynomial> p;
  p[{0, 0}] = radical(local({{0, 1}, {2, 0}}) * Rational(1, 2) + local({{2, 2}}));
  p[{0, 1}] = radical(local({{0, 1}}), ScaledScalar(Rational(15, 8), 2));
  p[{1, 0}] = p[{0, 1}];
  p[{1, 1}] = radical(local({{1, 1}}), ScaledScalar(8, 2));
  for (const auto& [beta, v] : p) {
    d.add_local(0, beta, v);
    d.add_local(1, {beta[1], beta[0]}, v);
  }
  return d;
}

TEST(Decomposition, DoubleEdgeExample) {
  auto d = double_edge_example();
  EXPECT_EQ(contract(d), RadicalPolynomial(test::double_edge_target()));
  EXPECT_TRUE(check_symmetry(d));
}

TEST(Decomposition, MinusSignExample) {
  OmegaGDecomposition d(edge_swap(true), 2, {1, 1});
  d.add_local(0, {0, 1}, local({{2, 1}}));
  d.add_local(0, {1, 0}, local({{0, 1}}));
  d.add_local(1, {1, 0}, local({{2, 1}}));
  d.add_local(1, {0, 1}, local({{0, 1}}));
  EXPECT_EQ(contract(d), RadicalPolynomial(test::x2_plus_y2()));
  EXPECT_TRUE(check_symmetry(d));
}

TEST(Decomposition, ZeroLocals) {
  OmegaGDecomposition d(edge_swap(true), 3, {1, 1});
  EXPECT_TRUE(contract(d).is_zero());
  EXPECT_TRUE(d.empty());
}

TEST(Decomposition, PlantedAsymmetry) {
  OmegaGDecomposition d(edge_swap(true), 2, {1, 1});
  d.add_local(0, {0, 1}, local({{2, 1}}));
  d.add_local(1, {0, 1}, local({{2, 1}}));
  EXPECT_FALSE(check_symmetry(d));
  OmegaGDecomposition t(SymmetryAction::trivial(standard_complex(StandardComplex::DoubleEdge)), 2, {1, 1});
  t.add_local(0, {0, 1}, local({{2, 1}}));
  EXPECT_TRUE(check_symmetry(t));
}

TEST(Decomposition, ScaleMultipliesEveryLocal) {
  auto d = double_edge_example();
  d.set_scale(ScaledScalar(3, 2));
  // sqrt(3)^2 = 3 for two sites
  EXPECT_EQ(contract(d), RadicalPolynomial(test::double_edge_target() * Rational(3)));
}

TEST(Decomposition, LocalValidation) {
  OmegaGDecomposition d(edge_swap(true), 2, {1, 1});
  EXPECT_EQ(error_of([&] { d.add_local(0, {0}, local({{0, 1}})); }), ErrorCode::LocalsNotAligned);
  EXPECT_EQ(error_of([&] { d.add_local(0, {0, 2}, local({{0, 1}})); }), ErrorCode::InvalidSize);
  Polynomial two_vars(std::vector<unsigned>{2});
  two_vars.add_term({1, 0}, Rational(1));
  EXPECT_EQ(error_of([&] { d.add_local(0, {0, 1}, two_vars); }), ErrorCode::IncompatibleBlockSizes);
}

std::vector<ElementaryTerm> x2y2_terms() {
  return {{radical(local({{2, 1}})), radical(local({{0, 1}}))}, {radical(local({{0, 1}})), radical(local({{2, 1}}))}};
}

TEST(Decomposition, FromElementary) {
  auto d = from_elementary(x2y2_terms(), standard_complex(StandardComplex::DoubleEdge), {1, 1});
  EXPECT_EQ(d.index_size(), 2u);
  EXPECT_EQ(contract(d), RadicalPolynomial(test::x2_plus_y2()));
  std::vector<ElementaryTerm> one{{radical(local({{1, 2}})), radical(local({{0, 3}}))}};
  auto r1 = from_elementary(one, standard_complex(StandardComplex::SingleEdge), {1, 1});
  EXPECT_EQ(r1.index_size(), 1u);
  EXPECT_EQ(contract(r1), elementary_sum(one, {1, 1}));
}

TEST(Decomposition, FromElementaryOnCircleUsesConstantAssignments) {
  std::vector<ElementaryTerm> terms;
  for (int j = 0; j < 2; ++j)
    terms.push_back({radical(local({{1, j + 1}})), radical(local({{2, 1}})), radical(local({{0, 1 - 2 * j}}))});
  auto d = from_elementary(terms, standard_complex(StandardComplex::Circle, 3), {1, 1, 1});
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(d.locals(i).size(), 2u);
    for (const auto& [beta, v] : d.locals(i)) EXPECT_EQ(beta[0], beta[1]);
  }
  EXPECT_EQ(contract(d), elementary_sum(terms, {1, 1, 1}));
  EXPECT_EQ(error_of([&] { from_elementary(terms, WeightedComplex::build({{{0, 1}, 1}, {{2}, 1}}), {1, 1, 1}); }),
            ErrorCode::NotConnected);
}

TEST(Decomposition, SymmetrizeFreeDoubleEdge) {
  auto d = symmetrize_free(x2y2_terms(), edge_swap(true), {1, 1});
  EXPECT_LE(d.index_size(), 4u);
  EXPECT_EQ(contract(d), RadicalPolynomial(test::x2_plus_y2()));
  EXPECT_TRUE(check_symmetry(d));
  EXPECT_EQ(d.scale(), ScaledScalar(Rational(1, 2), 2));
}

TEST(Decomposition, SymmetrizeFreeTrivialGroup) {
  auto c = standard_complex(StandardComplex::DoubleEdge);
  auto d = symmetrize_free(x2y2_terms(), SymmetryAction::trivial(c), {1, 1});
  auto e = from_elementary(x2y2_terms(), c, {1, 1});
  EXPECT_EQ(d.index_size(), e.index_size());
  EXPECT_EQ(contract(d), contract(e));
}

TEST(Decomposition, SymmetrizeFreeErrors) {
  EXPECT_EQ(error_of([] { symmetrize_free(x2y2_terms(), edge_swap(false), {1, 1}); }), ErrorCode::ActionNotFree);
  std::vector<ElementaryTerm> skew{{radical(local({{2, 1}})), radical(local({{0, 1}}))}};
  EXPECT_EQ(error_of([&] { symmetrize_free(skew, edge_swap(true), {1, 1}); }), ErrorCode::NotInvariant);
}

std::vector<ElementaryTerm> orbit_terms(const SymmetryAction& a, const ElementaryTerm& t) {
  std::vector<ElementaryTerm> out;
  for (std::size_t g = 0; g < a.order(); ++g) {
    ElementaryTerm moved(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) moved[static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)))] = t[i];
    out.push_back(moved);
  }
  return out;
}

TEST(Decomposition, SymmetrizeFreeCircle) {
  auto a = cyclic_rotation(3);
  auto terms = orbit_terms(a, {radical(local({{0, 1}, {1, -2}})), radical(local({{2, 3}})), radical(local({{1, 1}}))});
  auto d = symmetrize_free(terms, a, {1, 1, 1});
  auto p = contract(d);
  EXPECT_EQ(p, elementary_sum(terms, {1, 1, 1}));
  EXPECT_TRUE(is_invariant(p, a));
  EXPECT_TRUE(check_symmetry(d));
  EXPECT_LE(d.index_size(), a.order() * terms.size());
}

TEST(Decomposition, BlendingSingleEdge) {
  auto b = blending_difference(x2y2_terms(), edge_swap(false), {1, 1});
  EXPECT_EQ(contract(b.positive) - contract(b.negative), RadicalPolynomial(test::x2_plus_y2()));
  EXPECT_TRUE(check_symmetry(b.positive));
  EXPECT_TRUE(check_symmetry(b.negative));
}

TEST(Decomposition, BlendingSimplexTwoHasNoNegativePart) {
  auto a = full_symmetric(2);
  // sum over sigma of x_{sigma 0}^2 x_{sigma 1} x_{sigma 2}
  auto terms = orbit_terms(a, {radical(local({{2, 1}})), radical(local({{1, 1}})), radical(local({{1, 1}}))});
  auto b = blending_difference(terms, a, {1, 1, 1});
  EXPECT_TRUE(b.negative.empty());
  EXPECT_EQ(contract(b.positive), elementary_sum(terms, {1, 1, 1}));
  EXPECT_TRUE(check_symmetry(b.positive));
}

TEST(Decomposition, BlendingZero) {
  auto b = blending_difference({}, full_symmetric(1), {1, 1});
  EXPECT_TRUE(b.positive.empty());
  EXPECT_TRUE(b.negative.empty());
  EXPECT_EQ(error_of([] { blending_difference({}, cyclic_rotation(3), {1, 1, 1}); }), ErrorCode::ActionNotBlending);
}

// (1/2^n) sum eps (prod eps) v^(n+1) equals the permutation indicator.
void check_indicator(int n) {
  auto split = symmetric_indicator_split(n);
  EXPECT_EQ(split.size(), std::size_t{1} << n);
  const int k = n + 1;
  std::size_t entries = 1;
  for (int i = 0; i < k; ++i) entries *= static_cast<std::size_t>(k);
  for (std::size_t e = 0; e < entries; ++e) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::size_t r = e;
    for (auto& v : idx) {
      v = static_cast<int>(r % static_cast<std::size_t>(k));
      r /= static_cast<std::size_t>(k);
    }
    Rational total = 0;
    for (const auto& sv : split) {
      long prod = sv.sign;
      for (int v : idx) prod *= sv.coeffs[static_cast<std::size_t>(v)];
      total += prod;
    }
    total /= Rational(1L << n);
    auto sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    bool perm = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    EXPECT_EQ(total, Rational(perm ? 1 : 0));
  }
}

TEST(Decomposition, IndicatorSplit) {
  for (int n = 0; n <= 4; ++n) check_indicator(n);
  auto one = symmetric_indicator_split(1);
  EXPECT_EQ(one[0].coeffs, (std::vector<int>{1, 1}));
  EXPECT_EQ(error_of([] { symmetric_indicator_split(9); }), ErrorCode::SizeTooLarge);
}

TEST(Decomposition, SubadditivityAndSubmultiplicativity) {
  auto a = symmetrize_free(x2y2_terms(), edge_swap(true), {1, 1});
  auto b = double_edge_example();
  auto sum = direct_sum(a, b);
  EXPECT_EQ(sum.index_size(), a.index_size() + b.index_size());
  EXPECT_EQ(contract(sum), contract(a) + contract(b));
  EXPECT_TRUE(check_symmetry(sum));
  auto prod = product(a, b);
  EXPECT_EQ(prod.index_size(), a.index_size() * b.index_size());
  auto want = RadicalPolynomial::product(contract(a), contract(b), [](const Polynomial& x, const Polynomial& y) { return x * y; });
  EXPECT_EQ(contract(prod), want);
  EXPECT_TRUE(check_symmetry(prod));
}

TEST(Decomposition, ContractionGuard) {
  auto a = cyclic_rotation(5);
  auto terms = orbit_terms(a, {radical(local({{0, 1}})), radical(local({{1, 1}})), radical(local({{0, 1}})),
                               radical(local({{0, 1}})), radical(local({{2, 1}}))});
  auto d = symmetrize_free(terms, a, {1, 1, 1, 1, 1});
  EXPECT_EQ(error_of([&] { contract(d, {3}); }), ErrorCode::SearchSpaceTooLarge);
}

TEST(Decomposition, SeparableSymmetrize) {
  std::vector<SeparableTerm> terms{{{radical(local({{2, 1}})), radical(local({{0, 1}}))}, {}},
                                   {{radical(local({{0, 1}})), radical(local({{2, 1}}))}, {}}};
  auto sep = separable_symmetrize(terms, edge_swap(true), {1, 1}, LocalCone::SumOfSquares);
  EXPECT_EQ(contract(sep.dec), RadicalPolynomial(test::x2_plus_y2()));
  EXPECT_TRUE(check_symmetry(sep.dec));
  for (std::size_t i = 0; i < 2; ++i)
    for (const auto& [beta, v] : sep.dec.locals(i)) EXPECT_TRUE(in_local_cone(v, LocalCone::SumOfSquares));
  std::vector<SeparableTerm> bad{{{radical(local({{1, 1}})), radical(local({{0, 1}}))}, {}},
                                 {{radical(local({{0, 1}})), radical(local({{1, 1}}))}, {}}};
  EXPECT_EQ(error_of([&] { separable_symmetrize(bad, edge_swap(true), {1, 1}, LocalCone::SumOfSquares); }),
            ErrorCode::FactorNotInCone);
  EXPECT_EQ(error_of([&] { separable_symmetrize(terms, edge_swap(false), {1, 1}, LocalCone::SumOfSquares); }),
            ErrorCode::ActionNotFree);
}

TEST(Decomposition, SeparableSymmetrizeCircleCones) {
  auto a = cyclic_rotation(3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(0, 3);
  for (int trial = 0; trial < 5; ++trial) {
    ElementaryTerm base;
    for (int i = 0; i < 3; ++i) base.push_back(radical(local({{0, c(rng) + 1}, {1, c(rng)}, {2, c(rng)}})));
    std::vector<SeparableTerm> terms;
    for (const auto& t : orbit_terms(a, base)) terms.push_back({t, {}});
    auto sep = separable_symmetrize(terms, a, {1, 1, 1}, LocalCone::NonnegativeCoefficients);
    for (std::size_t i = 0; i < 3; ++i)
      for (const auto& [beta, v] : sep.dec.locals(i)) EXPECT_TRUE(in_local_cone(v, LocalCone::NonnegativeCoefficients));
    std::vector<ElementaryTerm> plain;
    for (const auto& t : terms) plain.push_back(t.factors);
    EXPECT_EQ(contract(sep.dec), elementary_sum(plain, {1, 1, 1}));
  }
}

}  // namespace
}  // namespace omega
