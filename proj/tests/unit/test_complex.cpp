#include "omega/complex.hpp"

#include "test_support.hpp"

namespace omega {
namespace {

using test::error_of;

TEST(Complex, SingleAndDoubleEdge) {
  auto single = WeightedComplex::build({{{0, 1}, 1}});
  EXPECT_EQ(single.label_count(), 1u);
  auto dbl = WeightedComplex::build({{{0, 1}, 2}});
  EXPECT_EQ(dbl.label_count(), 2u);
  EXPECT_EQ(dbl.multifacets_at(0).size(), 2u);
  EXPECT_EQ(dbl.multifacets_at(1).size(), 2u);
  EXPECT_EQ(dbl.labels()[1].copy, 1);
}

TEST(Complex, SingleVertex) {
  auto c = WeightedComplex::build({{{0}, 1}});
  EXPECT_EQ(c.vertex_count(), 1u);
  EXPECT_EQ(c.label_count(), 1u);
  EXPECT_TRUE(c.is_connected());
}

TEST(Complex, Rejections) {
  EXPECT_EQ(error_of([] { WeightedComplex::build({{{}, 1}}); }), ErrorCode::EmptyFacet);
  EXPECT_EQ(error_of([] { WeightedComplex::build({{{0, 1, 2}, 1}, {{0, 1}, 1}}); }), ErrorCode::NonMaximalFacet);
  EXPECT_EQ(error_of([] { WeightedComplex::build({{{0, 1}, 1}}, 3); }), ErrorCode::UncoveredVertex);
  EXPECT_EQ(error_of([] { WeightedComplex::build({{{0, 5}, 1}}, 2); }), ErrorCode::VertexOutOfRange);
}

TEST(Complex, StandardFamilies) {
  auto s = standard_complex(StandardComplex::Simplex, 4);
  EXPECT_EQ(s.facets().size(), 1u);
  EXPECT_EQ(s.label_count(), 1u);
  EXPECT_EQ(s.multifacets_at(3).size(), 1u);
  EXPECT_EQ(standard_complex(StandardComplex::Line, 3).facets().size(), 3u);
  auto circle = standard_complex(StandardComplex::Circle, 5);
  EXPECT_EQ(circle.facets().size(), 5u);
  for (std::size_t v = 0; v < 5; ++v) EXPECT_EQ(circle.multifacets_at(v).size(), 2u);
  EXPECT_EQ(error_of([] { standard_complex(StandardComplex::Circle, 2); }), ErrorCode::InvalidSize);
  EXPECT_EQ(error_of([] { standard_complex(StandardComplex::Line, 0); }), ErrorCode::InvalidSize);
}

TEST(Complex, CircleAdjacency) {
  auto circle = standard_complex(StandardComplex::Circle, 5);
  std::vector<std::vector<int>> facets;
  for (int l : circle.multifacets_at(2)) facets.push_back(circle.facets()[static_cast<std::size_t>(circle.facet_of(l))].vertices);
  std::sort(facets.begin(), facets.end());
  EXPECT_EQ(facets, (std::vector<std::vector<int>>{{1, 2}, {2, 3}}));
}

TEST(Complex, Connectivity) {
  EXPECT_TRUE(standard_complex(StandardComplex::Circle, 5).is_connected());
  EXPECT_FALSE(WeightedComplex::build({{{0, 1}, 1}, {{2, 3}, 1}}).is_connected());
  EXPECT_TRUE(standard_complex(StandardComplex::SingleEdge).is_connected());
  for (int n = 0; n <= 5; ++n) EXPECT_TRUE(standard_complex(StandardComplex::Simplex, n).is_connected());
}

TEST(Complex, OmegaIsGcdOfContainingFacets) {
  auto c = WeightedComplex::build({{{0, 1}, 4}, {{1, 2}, 6}});
  int v1[] = {1}, v0[] = {0}, e[] = {0, 1}, none[] = {0, 2};
  EXPECT_EQ(c.omega(v1), 2);
  EXPECT_EQ(c.omega(v0), 4);
  EXPECT_EQ(c.omega(e), 4);
  EXPECT_EQ(c.omega(none), 0);
  EXPECT_TRUE(c.divisibility_holds());
}

TEST(Complex, LabelCountIsWeightSum) {
  auto c = WeightedComplex::build({{{0, 1}, 3}, {{1, 2}, 2}, {{0, 2}, 1}});
  EXPECT_EQ(c.label_count(), 6u);
  std::vector<int> fiber(3, 0);
  for (std::size_t l = 0; l < c.label_count(); ++l) ++fiber[static_cast<std::size_t>(c.facet_of(static_cast<int>(l)))];
  for (std::size_t f = 0; f < 3; ++f) EXPECT_EQ(fiber[f], c.facets()[f].weight);
}

}  // namespace
}  // namespace omega
