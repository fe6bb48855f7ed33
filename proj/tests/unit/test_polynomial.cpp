#include "omega/polynomial.hpp"

#include <random>

#include "omega/symmetry.hpp"
#include "test_support.hpp"

namespace omega {
namespace {

using test::bivariate;
using test::error_of;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_string(Rational(3, 2)), "3/2");
  EXPECT_EQ(error_of([] { parse_rational("1/0"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([] { parse_rational("abc"); }), ErrorCode::ParseError);
  EXPECT_EQ(rational_from_double(0.375), Rational(3, 8));
}

TEST(Rational, ExactRoots) {
  EXPECT_EQ(exact_root(Rational(9, 4), 2), Rational(3, 2));
  EXPECT_FALSE(exact_root(Rational(2), 2).has_value());
  EXPECT_EQ(exact_root(Rational(-8), 3), Rational(-2));
  EXPECT_EQ(binomial(4, 2), 6);
}

TEST(ScaledScalar, CanonicalForm) {
  ScaledScalar a(4, 2);  // sqrt 4 = 2
  EXPECT_TRUE(a.is_rational());
  EXPECT_EQ(a.as_rational(), Rational(2));
  ScaledScalar b(8, 6);  // 8^(1/6) = sqrt 2
  EXPECT_EQ(b, ScaledScalar(2, 2));
  EXPECT_EQ(ScaledScalar(2, 2) * ScaledScalar(2, 2), ScaledScalar(2));
  EXPECT_EQ(ScaledScalar(Rational(1, 2), 2).inverse(), ScaledScalar(2, 2));
  EXPECT_NEAR(ScaledScalar(Rational(15, 8), 2).to_double(), std::sqrt(15.0 / 8.0), 1e-15);
  EXPECT_EQ(rational_ratio(ScaledScalar(8, 2), ScaledScalar(2, 2)), Rational(2));
  EXPECT_FALSE(rational_ratio(ScaledScalar(3, 2), ScaledScalar(2, 2)).has_value());
}

TEST(RadicalNumber, ExactZeroTest) {
  RadicalNumber x(ScaledScalar(8, 2), Rational(1));  // sqrt 8
  x.add(ScaledScalar(2, 2), Rational(-2));           // - 2 sqrt 2
  EXPECT_TRUE(x.is_zero());
  RadicalNumber y(ScaledScalar(2, 2), Rational(1));
  y.add(ScaledScalar(3, 2), Rational(1));
  EXPECT_FALSE(y.is_zero());
  EXPECT_EQ(y.groups().size(), 2u);
  auto sq = RadicalNumber::product(y, y, [](const Rational& a, const Rational& b) { return a * b; });
  // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt 6
  RadicalNumber want(Rational(5));
  want.add(ScaledScalar(6, 2), Rational(2));
  EXPECT_EQ(sq, want);
}

TEST(Polynomial, LocalDegree) {
  EXPECT_EQ(test::double_edge_target().local_degree(0), 2u);
  EXPECT_EQ(test::double_edge_target().local_degree(1), 2u);
  EXPECT_EQ(Polynomial::constant({1, 1}, Rational(1)).degree(), 0u);
  auto p = bivariate({{{3, 1}, 1}});
  EXPECT_EQ(std::max(p.local_degree(0), p.local_degree(1)), 3u);
  EXPECT_LE(p.local_degree(0), p.degree());
  EXPECT_LE(p.degree(), 2 * p.local_degree(0));
}

TEST(Polynomial, ArithmeticKeepsCanonicalForm) {
  auto p = bivariate({{{1, 0}, 1}, {{0, 1}, 1}});
  auto q = bivariate({{{1, 0}, 1}, {{0, 1}, -1}});
  auto prod = p * q;
  EXPECT_EQ(prod, bivariate({{{2, 0}, 1}, {{0, 2}, -1}}));
  EXPECT_EQ(p * q, q * p);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p * (q + p), p * q + p * p);
  EXPECT_EQ(error_of([&] { p + Polynomial(std::vector<unsigned>{2}); }), ErrorCode::IncompatibleBlockSizes);
}

TEST(Polynomial, Action) {
  auto a = edge_swap(false);
  auto x2y = bivariate({{{2, 1}, 1}});
  EXPECT_EQ(act(1, x2y, a), bivariate({{{1, 2}, 1}}));
  EXPECT_EQ(act(0, x2y, a), x2y);
  EXPECT_EQ(act(1, test::x2_plus_y2(), a), test::x2_plus_y2());
  EXPECT_TRUE(is_invariant(test::x2_plus_y2(), a));
  EXPECT_FALSE(is_invariant(x2y, a));
  EXPECT_TRUE(is_invariant(x2y, SymmetryAction::trivial(standard_complex(StandardComplex::SingleEdge))));
  Polynomial mixed(std::vector<unsigned>{1, 2});
  mixed.add_term({1, 0, 1}, Rational(1));
  EXPECT_EQ(error_of([&] { act(1, mixed, a); }), ErrorCode::IncompatibleBlockSizes);
}

Polynomial random_poly(std::mt19937_64& rng, std::vector<unsigned> sites) {
  std::uniform_int_distribution<int> c(-4, 4), e(0, 2);
  Polynomial p(sites);
  unsigned vars = p.variable_count();
  for (int t = 0; t < 6; ++t) {
    Exponent x(vars);
    for (auto& v : x) v = static_cast<std::uint32_t>(e(rng));
    p.add_term(x, Rational(c(rng)));
  }
  return p;
}

TEST(Polynomial, ActionIsHomomorphism) {
  std::mt19937_64 rng(7);
  auto a = full_symmetric(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = random_poly(rng, {1, 1, 1});
    for (std::size_t g = 0; g < a.order(); ++g)
      for (std::size_t h = 0; h < a.order(); ++h) EXPECT_EQ(act(h, act(g, p, a), a), act(a.compose(h, g), p, a));
    EXPECT_EQ(act(a.identity(), p, a), p);
  }
}

TEST(Polynomial, EvaluationUnderBlockPermutation) {
  // Moving block i of the point to site g i: (g x)_j = x_{g^-1 j}, and p(g x) = (g^-1 p)(x).
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  auto a = cyclic_rotation(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = random_poly(rng, {1, 1, 1, 1});
    std::vector<double> x(4);
    for (auto& v : x) v = u(rng);
    for (std::size_t g = 0; g < a.order(); ++g) {
      std::vector<double> moved(4);
      for (int i = 0; i < 4; ++i) moved[static_cast<std::size_t>(a.act_vertex(g, i))] = x[static_cast<std::size_t>(i)];
      EXPECT_NEAR(p.evaluate(moved), act(a.inverse(g), p, a).evaluate(x), 1e-9);
    }
  }
}

TEST(Polynomial, BipartiteRank) {
  EXPECT_EQ(bipartite_rank(test::double_edge_target()), 3u);
  // (1 + xy)^2 = 1 + 2xy + x^2 y^2 has the diagonal coefficient matrix diag(1, 2, 1)
  EXPECT_EQ(bipartite_rank(bivariate({{{0, 0}, 1}, {{1, 1}, 2}, {{2, 2}, 1}})), 3u);
  EXPECT_EQ(bipartite_rank(Polynomial(std::vector<unsigned>{1, 1})), 0u);
  EXPECT_EQ(bipartite_rank(test::x2_plus_y2()), 2u);
  EXPECT_EQ(error_of([] { bipartite_rank(Polynomial(std::vector<unsigned>{1, 1, 1})); }), ErrorCode::NotBipartite);
}

TEST(Polynomial, FloatConversions) {
  auto p = test::double_edge_target();
  EXPECT_EQ(to_exact(to_float(p)), p);
  RadicalPolynomial r(ScaledScalar(2, 2), p);
  EXPECT_NEAR(max_coefficient_difference(to_float(r, {1, 1}), to_float(p * Rational(1))), (std::sqrt(2.0) - 1) * 8, 1e-12);
}

}  // namespace
}  // namespace omega
