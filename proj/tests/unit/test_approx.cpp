#include "omega/approx.hpp"

#include <cmath>
#include <random>

#include "test_support.hpp"

namespace omega {
namespace {

using test::error_of;

Matrix rank_one(const Eigen::VectorXd& v) { return v * v.transpose(); }

TEST(Approx, MaureySamples) {
  EXPECT_EQ(maurey_samples(1.0), 437u);
  EXPECT_EQ(maurey_samples(std::sqrt(0.5)), 874u);
  EXPECT_EQ(maurey_samples(0.5), 1748u);
  EXPECT_EQ(error_of([] { maurey_samples(0.0); }), ErrorCode::InvalidArgument);
}

TEST(Approx, Homogenize) {
  auto p = test::bivariate({{{0, 0}, 1}, {{1, 1}, 2}});
  auto h = homogenize(p, 2);
  EXPECT_EQ(h.sites(), (std::vector<unsigned>{2, 2}));
  Polynomial want(std::vector<unsigned>{2, 2});
  want.add_term({2, 0, 2, 0}, Rational(1));
  want.add_term({1, 1, 1, 1}, Rational(2));
  EXPECT_EQ(h, want);
  EXPECT_EQ(error_of([&] { homogenize(p, 0); }), ErrorCode::NotHomogeneous);
  auto hf = homogenize(to_float(p), 1);
  EXPECT_EQ(hf.terms().size(), 2u);
}

TEST(Approx, InfinityNorm) {
  FloatPolynomial mono(std::vector<unsigned>{2, 2});
  mono.add_term({1, 0, 1, 0}, 1.0);
  auto est = infinity_norm_lower(mono, 200, 3);
  EXPECT_NEAR(est.value, 1.0, 1e-6);
  EXPECT_LE(est.value, 1.0 + 1e-12);
  ASSERT_EQ(est.point.size(), 4u);
  EXPECT_NEAR(est.point[0] * est.point[0] + est.point[1] * est.point[1], 1.0, 1e-12);
  FloatPolynomial zero(std::vector<unsigned>{2, 2});
  EXPECT_EQ(infinity_norm_lower(zero).value, 0.0);
  FloatPolynomial mixed(std::vector<unsigned>{2, 2});
  mixed.add_term({1, 0, 1, 0}, 1.0);
  mixed.add_term({2, 0, 1, 0}, 1.0);
  EXPECT_EQ(error_of([&] { infinity_norm_lower(mixed); }), ErrorCode::NotHomogeneous);
}

TEST(Approx, InfinityNormBelowGramBounds) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 5; ++trial) {
    Matrix b(4, 4);
    for (long k = 0; k < b.size(); ++k) b.data()[k] = normal(rng);
    Matrix m = b * b.transpose();
    GramRepresentation g{1, 2, 1, Matrix::Zero(9, 9)};
    // Place the random block on the degree-one part x_1, x_2 of each site.
    const long idx[2] = {1, 2};
    for (long r = 0; r < 4; ++r)
      for (long c = 0; c < 4; ++c) g.entries(3 * idx[r / 2] + idx[r % 2], 3 * idx[c / 2] + idx[c % 2]) = m(r, c);
    auto p = gram_map(g);
    auto est = infinity_norm_lower(p, 300, static_cast<std::uint64_t>(trial));
    auto bounds = gram_norm_bounds(m);
    EXPECT_LE(est.value, bounds.sigma_max * (1 + 1e-9));
    EXPECT_LE(bounds.sigma_max, bounds.schatten2 * (1 + 1e-12));
  }
}

TEST(Approx, GramNormBounds) {
  Eigen::VectorXd b(2);
  b << 1, 1;
  auto r = gram_norm_bounds(rank_one(b));
  EXPECT_NEAR(r.sigma_max, 2.0, 1e-12);
  EXPECT_NEAR(r.schatten2, 2.0, 1e-12);
  auto id = gram_norm_bounds(Matrix::Identity(5, 5));
  EXPECT_NEAR(id.sigma_max, 1.0, 1e-12);
  EXPECT_NEAR(id.schatten2, std::sqrt(5.0), 1e-12);
}

TEST(Approx, MuUpper) {
  SeparableGram g{1, 1, 1, {0.5}, {{Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2)}}};
  EXPECT_DOUBLE_EQ(mu_upper(g), 4.0);
  auto scaled = g;
  scaled.weights[0] *= 3;
  EXPECT_DOUBLE_EQ(mu_upper(scaled), 12.0);
  SeparableGram both = g;
  both.weights.push_back(scaled.weights[0]);
  both.factors.push_back(scaled.factors[0]);
  EXPECT_LE(gram_norm_bounds(both.assemble()).schatten2, mu_upper(both));
  EXPECT_DOUBLE_EQ(mu_upper(both), mu_upper(g) + mu_upper(scaled));
}

TEST(Approx, WitnessValidation) {
  SeparableGram g{1, 1, 1, {1.0}, {{Matrix::Identity(2, 2), Matrix::Identity(3, 3)}}};
  EXPECT_EQ(error_of([&] { g.validate(); }), ErrorCode::DimensionMismatch);
  Matrix neg = Matrix::Identity(2, 2);
  neg(1, 1) = -1;
  SeparableGram h{1, 1, 1, {1.0}, {{Matrix::Identity(2, 2), neg}}};
  EXPECT_EQ(error_of([&] { h.validate(); }), ErrorCode::NotPSD);
}

TEST(Approx, RandomWitness) {
  auto w = random_invariant_witness(2, 1, 6, 9);
  EXPECT_NEAR(w.trace(), 1.0, 1e-12);
  EXPECT_EQ(w.factors.size(), 12u);
  GramRepresentation whole{1, 2, 1, w.assemble()};
  EXPECT_LT(gram_invariance_defect(whole, edge_swap(true)), 1e-12);
}

TEST(Approx, VerbatimPath) {
  auto a = edge_swap(true);
  auto w = random_invariant_witness(2, 1, 4, 2);
  auto r = approx_separable(w, a, 0.5, 1);
  EXPECT_TRUE(r.verbatim);
  EXPECT_EQ(r.samples, 0u);
  EXPECT_LT(r.error, 1e-12);
  EXPECT_TRUE(check_symmetry(r.decomposition.dec));
}

TEST(Approx, SampledPath) {
  auto a = edge_swap(true);
  auto w = random_invariant_witness(2, 1, 10, 4);
  auto r = approx_separable(w, a, 0.5, 7, std::nullopt, true);
  EXPECT_FALSE(r.verbatim);
  EXPECT_EQ(r.samples, 1748u);
  EXPECT_EQ(r.index_budget, 1748u * 2);
  EXPECT_LE(r.decomposition.dec.index_size(), r.index_budget);
  EXPECT_LE(r.error, 0.5);
  EXPECT_TRUE(check_symmetry(r.decomposition.dec));
  GramRepresentation approx{1, 2, 1, r.approximant};
  EXPECT_LT(gram_invariance_defect(approx, a), 1e-12);
  auto again = approx_separable(w, a, 0.5, 7, std::nullopt, true);
  EXPECT_EQ(again.error, r.error);
}

TEST(Approx, ContractionMatchesApproximant) {
  auto a = edge_swap(true);
  auto w = random_invariant_witness(1, 1, 4, 12);
  auto r = approx_separable(w, a, 1.0, 3, 20, true);
  auto p = to_float(contract(r.decomposition.dec), {1, 1});
  EXPECT_LT(max_coefficient_difference(p, gram_map({1, 1, 1, r.approximant})), 1e-9);
}

TEST(Approx, Errors) {
  auto a = edge_swap(true);
  auto w = random_invariant_witness(2, 1, 4, 2);
  auto big = w;
  for (auto& x : big.weights) x *= 2;
  EXPECT_EQ(error_of([&] { approx_separable(big, a, 0.5, 1); }), ErrorCode::NotNormalized);
  SeparableGram skew{1, 1, 1, {0.5}, {{Matrix::Identity(2, 2) / 2, rank_one(Eigen::Vector2d(1, 0))}}};
  EXPECT_EQ(error_of([&] { approx_separable(skew, a, 0.5, 1); }), ErrorCode::NotInvariant);
  EXPECT_EQ(error_of([&] { approx_separable(w, a, 0.5, 1, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_of([&] { approx_separable(w, cyclic_rotation(3), 0.5, 1); }), ErrorCode::DimensionMismatch);
}

}  // namespace
}  // namespace omega
