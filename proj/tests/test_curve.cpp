#include <gtest/gtest.h>

#include "nodal_stab.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace ns = nodal_stab;
namespace nt = nodal_stab::testing;

namespace {

ns::CurveDescription path3_desc() { return {{{1, 0, 0}, {2, 0, 0}, {3, 0, 0}}, {{1, 2}, {2, 3}}}; }
ns::CurveDescription star_desc() { return {{{1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {4, 0, 0}}, {{4, 1}, {4, 2}, {4, 3}}}; }

ns::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ns::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ns::ErrorCode::ParseError;
}

}  // namespace

TEST(Validate, TwoComponentPath) {
  auto rep = ns::validate_curve({{{1, 1, 0}, {2, 1, 0}}, {{1, 2}}});
  EXPECT_EQ(rep.arithmetic_genus, 2);
  EXPECT_TRUE(rep.genus_at_least_two);
  EXPECT_EQ(rep.components, 2u);
  EXPECT_EQ(rep.edges, 1u);
}

TEST(Validate, Triangle) {
  EXPECT_EQ(code_of([] { ns::validate_curve({{{1, 0, 0}, {2, 0, 0}, {3, 0, 0}}, {{1, 2}, {2, 3}, {1, 3}}}); }),
            ns::ErrorCode::CycleDetected);
}

TEST(Validate, NoEdges) {
  EXPECT_EQ(code_of([] { ns::validate_curve({{{1, 0, 0}, {2, 0, 0}}, {}}); }), ns::ErrorCode::Disconnected);
}

TEST(Validate, MalformedInput) {
  EXPECT_EQ(code_of([] { ns::validate_curve({{{1, 0, 0}, {2, 0, 0}}, {{1, 2}, {2, 1}}}); }), ns::ErrorCode::MultiEdge);
  EXPECT_EQ(code_of([] { ns::validate_curve({}); }), ns::ErrorCode::EmptyCurve);
  EXPECT_EQ(code_of([] { ns::validate_curve({{{1, 0, 0}, {1, 0, 0}}, {}}); }), ns::ErrorCode::DuplicateId);
  EXPECT_EQ(code_of([] { ns::validate_curve({{{1, 0, 0}}, {{1, 5}}}); }), ns::ErrorCode::UnknownComponent);
  EXPECT_EQ(code_of([] { ns::validate_curve({{{1, 0, 0}, {2, 0, 0}}, {{1, 1}}}); }), ns::ErrorCode::SelfLoop);
  EXPECT_EQ(code_of([] { ns::validate_curve({{{0, 0, 0}}, {}}); }), ns::ErrorCode::InvalidComponent);
  EXPECT_EQ(code_of([] { ns::validate_curve({{{1, -1, 0}}, {}}); }), ns::ErrorCode::InvalidComponent);
}

TEST(Validate, LowGenusIsReportedNotRejected) {
  auto rep = ns::validate_curve(star_desc());
  EXPECT_EQ(rep.arithmetic_genus, 0);
  EXPECT_FALSE(rep.genus_at_least_two);
}

TEST(Component, RationalFlag) {
  EXPECT_TRUE((ns::Component{1, 0, 0}.is_rational()));
  EXPECT_FALSE((ns::Component{1, 0, 1}.is_rational()));
  EXPECT_FALSE((ns::Component{1, 1, 0}.is_rational()));
  EXPECT_EQ((ns::Component{1, 2, 1}.arithmetic_genus()), 3);
}

TEST(ArithmeticGenus, Examples) {
  EXPECT_EQ(ns::arithmetic_genus(ns::TreeLikeCurve({{{1, 2, 1}}, {}})), 3);
  EXPECT_EQ(ns::arithmetic_genus(ns::TreeLikeCurve({{{1, 1, 0}, {2, 0, 1}, {3, 1, 0}}, {{1, 2}, {2, 3}}})), 3);

  ns::TreeLikeCurve star(star_desc());
  EXPECT_EQ(ns::arithmetic_genus(star), 0);
  ns::BundleClass trivial{1, {{1, 0}, {2, 0}, {3, 0}, {4, 0}}};
  EXPECT_EQ(1 - ns::euler_char_total(star, trivial), 0);
}

TEST(ArithmeticGenus, AgreesWithStructureSheafChi) {
  nt::Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    ns::TreeLikeCurve c(nt::random_tree(rng, static_cast<std::size_t>(nt::uniform(rng, 1, 8))));
    ns::BundleClass o{1, {}};
    for (auto id : c.ids()) o.multidegree[id] = 0;
    ASSERT_EQ(ns::arithmetic_genus(c), 1 - ns::euler_char_total(c, o));
  }
}

TEST(PruneOrdering, Path) {
  ns::TreeLikeCurve c(path3_desc());
  auto ord = ns::prune_ordering(c);
  EXPECT_EQ(ord.perm, (std::vector<ns::Id>{1, 3, 2}));
  EXPECT_EQ(ord.nu[0], 3u);
  EXPECT_EQ(ord.nu[1], 3u);
  EXPECT_EQ(ord.nu[2], 0u);
  EXPECT_TRUE(nt::ordering_property(c.description(), ord.perm));
}

TEST(PruneOrdering, SingleComponent) {
  ns::TreeLikeCurve c({{{7, 2, 0}}, {}});
  auto ord = ns::prune_ordering(c);
  EXPECT_EQ(ord.perm, (std::vector<ns::Id>{7}));
  EXPECT_EQ(ord.G[0], (std::vector<ns::Id>{7}));
  EXPECT_TRUE(ord.B[0].empty());
}

TEST(PruneOrdering, Star) {
  ns::TreeLikeCurve c(star_desc());
  auto ord = ns::prune_ordering(c);
  EXPECT_EQ(ord.perm, (std::vector<ns::Id>{1, 2, 3, 4}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ord.perm[ord.nu[i] - 1], 4);
  EXPECT_TRUE(nt::ordering_property(c.description(), ord.perm));
}

TEST(PruneOrdering, RandomTreesSatisfyOrderingProperty) {
  nt::Rng rng(12);
  for (int trial = 0; trial < 400; ++trial) {
    auto desc = nt::random_tree(rng, static_cast<std::size_t>(nt::uniform(rng, 1, 8)));
    ns::TreeLikeCurve c(desc);
    auto ord = ns::prune_ordering(c);
    ASSERT_TRUE(nt::ordering_property(desc, ord.perm));
    for (std::size_t i = 1; i <= c.size(); ++i) {
      auto g = nt::oracle_G(desc, ord.perm, i);
      ASSERT_EQ(ord.G[i - 1], std::vector<ns::Id>(g.begin(), g.end()));
      ASSERT_EQ(ord.G[i - 1].size() + ord.B[i - 1].size(), c.size());
      if (i < c.size()) {
        ns::Id up = ord.perm[ord.nu[i - 1] - 1];
        ASSERT_GT(ord.nu[i - 1], i);
        ASSERT_TRUE(std::binary_search(ord.B[i - 1].begin(), ord.B[i - 1].end(), up));
        ASSERT_TRUE(c.adjacent(c.index_of(ord.perm[i - 1]), c.index_of(up)));
        auto adj = nt::adjacency(desc);
        ASSERT_TRUE(nt::connected(adj, std::set<ns::Id>(ord.G[i - 1].begin(), ord.G[i - 1].end())));
      }
    }
  }
}

TEST(PruneOrdering, IndependentOfListingOrder) {
  nt::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    auto desc = nt::random_tree(rng, static_cast<std::size_t>(nt::uniform(rng, 1, 8)));
    auto first = ns::prune_ordering(ns::TreeLikeCurve(desc));
    auto shuffled = desc;
    std::shuffle(shuffled.components.begin(), shuffled.components.end(), rng);
    std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), rng);
    for (auto& e : shuffled.edges) std::swap(e.first, e.second);
    EXPECT_EQ(first, ns::prune_ordering(ns::TreeLikeCurve(shuffled)));
    EXPECT_EQ(first, ns::prune_ordering(ns::TreeLikeCurve(desc)));
  }
}

TEST(MakeOrdering, RejectsInadmissiblePermutations) {
  ns::TreeLikeCurve c(path3_desc());
  EXPECT_EQ(code_of([&] { ns::make_ordering(c, {2, 1, 3}); }), ns::ErrorCode::OrderingMismatch);
  EXPECT_EQ(code_of([&] { ns::make_ordering(c, {1, 3}); }), ns::ErrorCode::OrderingMismatch);
  EXPECT_EQ(code_of([&] { ns::make_ordering(c, {1, 1, 3}); }), ns::ErrorCode::OrderingMismatch);
  EXPECT_EQ(code_of([&] { ns::make_ordering(c, {1, 9, 3}); }), ns::ErrorCode::OrderingMismatch);
  EXPECT_NO_THROW(ns::make_ordering(c, {1, 2, 3}));
}

TEST(Decompose, PathFirstIndex) {
  ns::TreeLikeCurve c(path3_desc());
  auto ord = ns::prune_ordering(c);
  auto d = ns::decompose(c, ord, 1);
  EXPECT_EQ(d.G, (std::vector<ns::Id>{1}));
  EXPECT_EQ(d.B, (std::vector<ns::Id>{2, 3}));
  ASSERT_TRUE(d.boundary.has_value());
  EXPECT_EQ(*d.boundary, std::make_pair(ns::Id{1}, ns::Id{2}));
}

TEST(Decompose, LastIndex) {
  ns::TreeLikeCurve c(path3_desc());
  auto d = ns::decompose(c, ns::prune_ordering(c), 3);
  EXPECT_EQ(d.G, (std::vector<ns::Id>{1, 2, 3}));
  EXPECT_TRUE(d.B.empty());
  EXPECT_FALSE(d.boundary.has_value());
}

TEST(Decompose, StarLeaf) {
  ns::TreeLikeCurve c(star_desc());
  auto ord = ns::prune_ordering(c);
  auto d = ns::decompose(c, ord, ord.position.at(1));
  EXPECT_EQ(d.G, (std::vector<ns::Id>{1}));
  EXPECT_EQ(d.B, (std::vector<ns::Id>{2, 3, 4}));
  EXPECT_EQ(*d.boundary, std::make_pair(ns::Id{1}, ns::Id{4}));
}

TEST(Decompose, OutOfRange) {
  ns::TreeLikeCurve c(path3_desc());
  auto ord = ns::prune_ordering(c);
  EXPECT_EQ(code_of([&] { ns::decompose(c, ord, 0); }), ns::ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { ns::decompose(c, ord, 4); }), ns::ErrorCode::IndexOutOfRange);
}
