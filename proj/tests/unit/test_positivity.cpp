#include "omega/positivity.hpp"

#include <random>

#include "test_support.hpp"

namespace omega {
namespace {

using test::bivariate;
using test::error_of;
using test::local;
using test::radical;

// Basis on (1, x) (x) (1, y) with site 0 outermost: 1, y, x, xy.
Matrix outer_b() {
  Eigen::Vector4d b(1, 0, 0, 1);
  return b * b.transpose();
}

Polynomial one_plus_xy_squared() { return bivariate({{{0, 0}, 1}, {{1, 1}, 2}, {{2, 2}, 1}}); }

GramRepresentation double_edge_gram() {
  Matrix m(4, 4);
  m << 4, 0, 0, 4, 0, 1, 0, 0, 0, 0, 1, 0, 4, 0, 0, 4;
  return {1, 1, 1, m};
}

TEST(Positivity, MonomialBasisOrder) {
  auto basis = local_monomial_basis(2, 2);
  ASSERT_EQ(basis.size(), 6u);
  EXPECT_EQ(basis[0], (Exponent{0, 0}));
  EXPECT_EQ(basis[1], (Exponent{1, 0}));
  EXPECT_EQ(basis[2], (Exponent{0, 1}));
  EXPECT_EQ(basis[3], (Exponent{2, 0}));
}

TEST(Positivity, GramMap) {
  GramRepresentation g{1, 1, 1, outer_b()};
  EXPECT_LT(max_coefficient_difference(gram_map(g), to_float(one_plus_xy_squared())), 1e-15);
  GramRepresentation zero{1, 1, 1, Matrix::Zero(4, 4)};
  EXPECT_TRUE(gram_map(zero).is_zero());
  for (double alpha : {-2.0, 0.5, 3.0}) {
    Matrix m = outer_b();
    m(1, 2) += alpha, m(2, 1) += alpha, m(0, 3) -= alpha, m(3, 0) -= alpha;
    EXPECT_LT(max_coefficient_difference(gram_map({1, 1, 1, m}), to_float(one_plus_xy_squared())), 1e-15);
  }
  GramRepresentation bad{1, 1, 1, Matrix::Zero(3, 3)};
  EXPECT_EQ(error_of([&] { gram_map(bad); }), ErrorCode::DimensionMismatch);
}

TEST(Positivity, ConeChecks) {
  GramRepresentation g{1, 1, 1, outer_b()};
  auto sos = check_sos_certificate(to_float(one_plus_xy_squared()), &g);
  EXPECT_TRUE(sos.holds);
  EXPECT_EQ(error_of([&] { check_sos_certificate(to_float(one_plus_xy_squared()), nullptr); }),
            ErrorCode::MissingCertificate);
  auto neg = bivariate({{{2, 0}, -1}});
  EXPECT_FALSE(check_nonnegative_coefficients(neg).holds);
  auto sampled = check_nonnegative_sampled(to_float(neg));
  EXPECT_FALSE(sampled.holds);
  ASSERT_TRUE(sampled.witness.has_value());
  EXPECT_LT(to_float(neg).evaluate(*sampled.witness), 0.0);
  EXPECT_TRUE(check_nonnegative_coefficients(bivariate({{{2, 2}, 3}})).holds);
  auto fine = check_nonnegative_sampled(to_float(one_plus_xy_squared()));
  EXPECT_TRUE(fine.holds);
  EXPECT_FALSE(fine.conclusive);
}

TEST(Positivity, GramSymmetrize) {
  auto a = edge_swap(false);
  auto g = double_edge_gram();
  auto s = gram_symmetrize(g, a);
  EXPECT_LT((s.entries - g.entries).norm(), 1e-15);
  // With d = 2 the coefficient of x y^2 can move between Gram entries without
  // a matching move on x^2 y, so the matrix is no longer invariant.
  GramRepresentation skew{1, 1, 2, Matrix::Identity(9, 9)};
  skew.entries(0, 5) = skew.entries(5, 0) = 0.1;
  skew.entries(1, 4) = skew.entries(4, 1) = -0.1;
  EXPECT_GT(gram_invariance_defect(skew, a), 0.0);
  EXPECT_LT(max_coefficient_difference(gram_map(skew), gram_map({1, 1, 2, Matrix::Identity(9, 9)})), 1e-15);
  Matrix asym = g.entries;
  asym(1, 1) = 2;  // 2y^2 + x^2 is not invariant
  EXPECT_EQ(error_of([&] { gram_symmetrize({1, 1, 1, asym}, a); }), ErrorCode::NotInvariantPolynomial);
  auto t = gram_symmetrize({1, 1, 1, asym}, SymmetryAction::trivial(standard_complex(StandardComplex::SingleEdge)));
  EXPECT_LT((t.entries - asym).norm(), 1e-15);
}

TEST(Positivity, GramActionMatchesPolynomialAction) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  for (auto a : {edge_swap(false), cyclic_rotation(3)}) {
    const unsigned n = static_cast<unsigned>(a.complex().vertex_count() - 1);
    GramRepresentation g{n, 2, 1, Matrix()};
    const auto dim = static_cast<long>(g.dim());
    Matrix b(dim, dim);
    for (long k = 0; k < b.size(); ++k) b.data()[k] = normal(rng);
    g.entries = b + b.transpose();
    for (std::size_t h = 0; h < a.order(); ++h) {
      GramRepresentation moved{n, 2, 1, act_gram(h, g, a)};
      EXPECT_LT(max_coefficient_difference(gram_map(moved), act(h, gram_map(g), a)), 1e-12) << h;
    }
  }
}

TEST(Positivity, InvariantSosFamily) {
  auto a = edge_swap(false);
  auto g = double_edge_gram();
  auto fam = invariant_sos_family(g, a);
  EXPECT_EQ(fam.members.size(), 4u);
  EXPECT_LT(max_coefficient_difference(sum_of_squares(fam), to_float(test::double_edge_target())), 1e-9);
  EXPECT_LT(family_invariance_defect(fam, a), 1e-9);
  Matrix neg = g.entries;
  neg(1, 1) = neg(2, 2) = -1;
  EXPECT_EQ(error_of([&] { invariant_sos_family({1, 1, 1, neg}, a); }), ErrorCode::NotPSD);
}

TEST(Positivity, RankOneGram) {
  Eigen::Vector4d v(1, 2, 2, 1);
  GramRepresentation g{1, 1, 1, v * v.transpose()};
  auto fam = invariant_sos_family(g, edge_swap(false));
  std::size_t nonzero = 0;
  for (const auto& q : fam.members) {
    double top = 0;
    for (const auto& [e, c] : q.terms()) top = std::max(top, std::abs(c));
    if (top > 1e-9) ++nonzero;
  }
  EXPECT_GE(nonzero, 1u);
  EXPECT_LT(max_coefficient_difference(sum_of_squares(fam), gram_map(g)), 1e-9);
}

TEST(Positivity, FamilySymmetrizeReproducesMembers) {
  auto a = edge_swap(false);
  auto g = double_edge_gram();
  auto fam = invariant_sos_family(g, a);
  auto dec = family_symmetrize(elementary_family(psd_sqrt(g.entries), 1, 1, 1), free_refinement(a));
  EXPECT_TRUE(check_symmetry(dec));
  for (std::size_t k = 0; k < fam.members.size(); ++k) {
    auto q = to_float(contract_member(dec, fam.unflatten(k)), {1, 1});
    EXPECT_LT(max_coefficient_difference(q, fam.members[k]), 1e-9);
  }
  EXPECT_EQ(error_of([&] { family_symmetrize(elementary_family(psd_sqrt(g.entries), 1, 1, 1), a); }),
            ErrorCode::ActionNotFree);
}

TEST(Positivity, FactorizabilityExamples) {
  auto free_vertex = factorizability_solve(edge_swap(true), 2);
  EXPECT_TRUE(free_vertex.feasible);
  for (const auto& site : free_vertex.c)
    for (const auto& [beta, v] : site) EXPECT_NEAR(v, 1.0, 1e-12);
  auto flip = double_edge_copy_flip();
  EXPECT_EQ(coincidence_count(flip, 2, {0, 0}), 1u);
  EXPECT_EQ(coincidence_count(flip, 2, {0, 1}), 2u);
  auto f = factorizability_solve(flip, 2);
  EXPECT_TRUE(f.feasible);
  EXPECT_LT(f.residual, 1e-10);
  EXPECT_NEAR(f.c[0].at({0, 0}), 1.0, 1e-12);
  EXPECT_NEAR(f.c[0].at({0, 1}), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(f.c[1].at({1, 0}), 1.0 / std::sqrt(2.0), 1e-12);
  for (int n = 1; n <= 2; ++n) EXPECT_TRUE(factorizability_solve(full_symmetric(n), 2).feasible) << n;
  EXPECT_EQ(error_of([] { factorizability_solve(cyclic_rotation(5), 30, 1000); }), ErrorCode::SearchSpaceTooLarge);
}

SosDecomposition double_edge_sos_witness() {
  ScaledScalar r4(2, 4), r2(2, 2), half_r2(Rational(1, 2), 2);
  using Entry = std::pair<std::pair<std::uint32_t, std::uint32_t>, RadicalPolynomial>;
  std::vector<std::vector<Entry>> q(2);
  q[0] = {{{0, 0}, radical(local({{1, 1}}), r4)}, {{0, 1}, radical(local({{0, 1}}), half_r2)}, {{1, 0}, radical(local({{0, 1}}))}};
  q[1] = {{{1, 0}, radical(local({{1, 1}}), r2)}, {{1, 1}, radical(local({{1, 1}}), r4)}, {{2, 2}, radical(local({{0, 1}}), r4)}};
  SosDecomposition d(edge_swap(true), 3, {2, 2}, {1, 1});
  for (std::size_t k = 0; k < 2; ++k)
    for (const auto& [ab, v] : q[k]) {
      d.add_local(0, k, {ab.first, ab.second}, v);
      d.add_local(1, k, {ab.second, ab.first}, v);
    }
  return d;
}

TEST(Positivity, HandWitnessFamily) {
  auto w = double_edge_sos_witness();
  EXPECT_TRUE(check_symmetry(w));
  RadicalPolynomial root2_1pxy(ScaledScalar(2, 2), bivariate({{{0, 0}, 1}, {{1, 1}, 1}}));
  EXPECT_EQ(contract_member(w, {0, 0}), root2_1pxy);
  EXPECT_EQ(contract_member(w, {1, 1}), root2_1pxy);
  EXPECT_EQ(contract_member(w, {0, 1}), RadicalPolynomial(bivariate({{{0, 1}, 1}})));
  EXPECT_EQ(contract_member(w, {1, 0}), RadicalPolynomial(bivariate({{{1, 0}, 1}})));
  EXPECT_EQ(sum_of_squares(w), RadicalPolynomial(test::double_edge_target()));
}

TEST(Positivity, SosToPlain) {
  auto w = double_edge_sos_witness();
  auto plain = sos_to_plain(w);
  EXPECT_LE(plain.index_size(), 9u);
  EXPECT_EQ(contract(plain), RadicalPolynomial(test::double_edge_target()));
  EXPECT_TRUE(check_symmetry(plain));
  SosDecomposition single(edge_swap(false), 1, {1, 1}, {1, 1});
  single.add_local(0, 0, {0}, radical(local({{0, 1}, {1, 1}})));
  single.add_local(1, 0, {0}, radical(local({{0, 1}, {1, 1}})));
  auto sp = sos_to_plain(single);
  EXPECT_EQ(sp.index_size(), 1u);
  auto q = bivariate({{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}});
  EXPECT_EQ(contract(sp), RadicalPolynomial(q * q));
  SosDecomposition empty(edge_swap(false), 2, {1, 1}, {1, 1});
  EXPECT_TRUE(sos_to_plain(empty).empty());
}

TEST(Positivity, SepToSosMinusSign) {
  OmegaGDecomposition d(edge_swap(true), 2, {1, 1});
  d.add_local(0, {0, 1}, local({{2, 1}}));
  d.add_local(0, {1, 0}, local({{0, 1}}));
  d.add_local(1, {1, 0}, local({{2, 1}}));
  d.add_local(1, {0, 1}, local({{0, 1}}));
  SeparableDecomposition sep{d, LocalCone::SumOfSquares, {}};
  auto sos = sep_to_sos(sep, factorizability_solve(d.action(), 2));
  EXPECT_EQ(sos.index_size(), 2u);
  EXPECT_TRUE(check_symmetry(sos));
  EXPECT_LT(max_coefficient_difference(to_float(sum_of_squares(sos), {1, 1}), to_float(test::x2_plus_y2())), 1e-12);
}

TEST(Positivity, SepToSosWeighted) {
  auto a = double_edge_copy_flip();
  std::vector<SeparableTerm> terms{{{radical(local({{0, 1}, {2, 1}})), radical(local({{2, 2}}))}, {}},
                                   {{radical(local({{2, 3}})), radical(local({{0, 1}}))}, {}}};
  auto sep = separable_symmetrize(terms, a, {1, 1}, LocalCone::SumOfSquares, false);
  auto f = factorizability_solve(a, sep.dec.index_size());
  ASSERT_TRUE(f.feasible);
  auto sos = sep_to_sos(sep, f);
  EXPECT_LE(sos.index_size(), sep.dec.index_size());
  EXPECT_LT(max_coefficient_difference(to_float(sum_of_squares(sos), {1, 1}), to_float(contract(sep.dec), {1, 1})),
            1e-9);
  Factorizability infeasible;
  EXPECT_EQ(error_of([&] { sep_to_sos(sep, infeasible); }), ErrorCode::NotFactorizable);
}

TEST(Positivity, SepToSosNeedsSplits) {
  OmegaGDecomposition d(edge_swap(true), 1, {1, 1});
  // 1 + t + t^2 is a sum of squares but has no diagonal certificate
  d.add_local(0, {0, 0}, local({{0, 1}, {1, 1}, {2, 1}}));
  d.add_local(1, {0, 0}, local({{0, 1}, {1, 1}, {2, 1}}));
  SeparableDecomposition sep{d, LocalCone::SumOfSquares, {}};
  EXPECT_EQ(error_of([&] { sep_to_sos(sep, factorizability_solve(d.action(), 1)); }), ErrorCode::MissingSquareSplits);
}

TEST(Positivity, CaratheodoryBound) {
  EXPECT_EQ(caratheodory_bound(2, 1, 2, 1), 18);
  EXPECT_EQ(caratheodory_bound(1, 3, 0, 4), 1);
  EXPECT_EQ(caratheodory_bound(6, 2, 1, 2), 162);
}

TEST(Positivity, PsdHelpers) {
  Matrix m = double_edge_gram().entries;
  Matrix r = psd_sqrt(m);
  EXPECT_LT((r * r - m).norm(), 1e-12);
  EXPECT_NEAR(min_eigenvalue(m), 0.0, 1e-12);
  EXPECT_TRUE(is_psd(m));
  m(1, 1) = -1e-3;
  EXPECT_FALSE(is_psd(m));
}

}  // namespace
}  // namespace omega
