#include "omega/symmetry.hpp"

#include "test_support.hpp"

namespace omega {
namespace {

using test::error_of;

TEST(Symmetry, DoubleEdgeActions) {
  auto free_swap = edge_swap(true);
  EXPECT_EQ(free_swap.order(), 2u);
  EXPECT_TRUE(is_free(free_swap));
  auto c = standard_complex(StandardComplex::DoubleEdge);
  auto fixed_labels = SymmetryAction::build(c, {{{1, 0}, {0, 1}}});
  EXPECT_EQ(fixed_labels.order(), 2u);
  EXPECT_FALSE(is_free(fixed_labels));
  auto trivial = SymmetryAction::build(standard_complex(StandardComplex::SingleEdge), {{{0, 1}, {0}}});
  EXPECT_EQ(trivial.order(), 1u);
}

TEST(Symmetry, BuildRejectsBadGenerators) {
  auto c = WeightedComplex::build({{{0, 1}, 2}, {{1, 2}, 1}});
  EXPECT_EQ(error_of([&] { SymmetryAction::build(c, {{{2, 1, 0}, {2, 1, 0}}}); }), ErrorCode::WeightNotPreserved);
  auto d = standard_complex(StandardComplex::DoubleEdge);
  EXPECT_EQ(error_of([&] { SymmetryAction::build(d, {{{0, 0}, {0, 1}}}); }), ErrorCode::InvalidPermutation);
  auto line = standard_complex(StandardComplex::Line, 2);
  // reversal on vertices but identity on edges breaks the collapse map
  EXPECT_EQ(error_of([&] { SymmetryAction::build(line, {{{2, 1, 0}, {0, 1}}}); }), ErrorCode::CollapseNotLinear);
  EXPECT_EQ(error_of([] { SymmetryAction::build(standard_complex(StandardComplex::Simplex, 7),
                                                {{{1, 2, 3, 4, 5, 6, 7, 0}, {0}}, {{1, 0, 2, 3, 4, 5, 6, 7}, {0}}}); }),
            ErrorCode::GroupTooLarge);
}

TEST(Symmetry, Freeness) {
  EXPECT_FALSE(is_free(edge_swap(false)));
  for (int n = 3; n <= 6; ++n) EXPECT_TRUE(is_free(cyclic_rotation(n)));
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(is_free(line_reversal(n)), n % 2 == 0) << n;
}

TEST(Symmetry, Blending) {
  for (int n = 1; n <= 3; ++n) EXPECT_TRUE(is_blending(full_symmetric(n)));
  for (int n = 3; n <= 5; ++n) EXPECT_FALSE(is_blending(cyclic_rotation(n)));
  EXPECT_FALSE(is_blending(line_reversal(3)));
  EXPECT_TRUE(is_blending(line_reversal(2)));
  EXPECT_EQ(error_of([] { is_blending(full_symmetric(3), 10); }), ErrorCode::SearchSpaceTooLarge);
}

TEST(Symmetry, GroupAxioms) {
  auto a = full_symmetric(3);
  ASSERT_EQ(a.order(), 24u);
  for (std::size_t g = 0; g < a.order(); ++g) {
    EXPECT_EQ(a.compose(g, a.inverse(g)), a.identity());
    EXPECT_EQ(a.compose(a.identity(), g), g);
    for (std::size_t h = 0; h < a.order(); ++h)
      for (int v = 0; v < 4; ++v)
        EXPECT_EQ(a.act_vertex(a.compose(g, h), v), a.act_vertex(g, a.act_vertex(h, v)));
  }
}

TEST(Symmetry, FreeRefinement) {
  auto r = free_refinement(edge_swap(false));
  EXPECT_TRUE(is_free(r));
  EXPECT_EQ(r.complex().label_count(), 2u);
  EXPECT_EQ(r.complex().facets()[0].weight, 2);
  auto t = free_refinement(SymmetryAction::trivial(standard_complex(StandardComplex::Circle, 4)));
  EXPECT_EQ(t.complex().label_count(), 4u);
  auto s = free_refinement(full_symmetric(1));
  EXPECT_TRUE(is_free(s));
  EXPECT_EQ(s.complex().facets()[0].weight, 2);
  for (auto a : {full_symmetric(2), line_reversal(3), cyclic_on_simplex(3)}) EXPECT_TRUE(is_free(free_refinement(a)));
}

TEST(Symmetry, LinearizerIsEquivariant) {
  for (auto a : {edge_swap(true), cyclic_rotation(5), free_refinement(full_symmetric(2))}) {
    auto z = linearizer(a);
    for (std::size_t g = 0; g < a.order(); ++g)
      for (std::size_t l = 0; l < a.complex().label_count(); ++l)
        EXPECT_EQ(z[static_cast<std::size_t>(a.act_label(g, static_cast<int>(l)))], a.compose(g, z[l]));
    for (const auto& orbit : a.label_orbits()) EXPECT_EQ(z[static_cast<std::size_t>(orbit.front())], a.identity());
  }
  auto z = linearizer(edge_swap(true));
  EXPECT_EQ(z[0], 0u);
  EXPECT_EQ(z[1], 1u);
  EXPECT_EQ(error_of([] { linearizer(edge_swap(false)); }), ErrorCode::ActionNotFree);
}

TEST(Symmetry, OrbitSizesDivideOrder) {
  for (auto a : {full_symmetric(3), cyclic_rotation(6), line_reversal(4), free_refinement(cyclic_on_simplex(2))})
    for (const auto& orbit : a.label_orbits()) EXPECT_EQ(a.order() % orbit.size(), 0u);
}

TEST(Symmetry, AssignmentActionComposes) {
  auto a = cyclic_rotation(4);
  Assignment beta{0, 1};
  for (std::size_t g = 0; g < a.order(); ++g)
    for (std::size_t h = 0; h < a.order(); ++h) {
      auto hi = static_cast<std::size_t>(a.act_vertex(h, 1));
      auto step = a.act_assignment(g, hi, a.act_assignment(h, 1, beta));
      EXPECT_EQ(step, a.act_assignment(a.compose(g, h), 1, beta));
    }
}

}  // namespace
}  // namespace omega
