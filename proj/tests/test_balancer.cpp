#include <gtest/gtest.h>

#include "nodal_stab.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace ns = nodal_stab;
namespace nt = nodal_stab::testing;
using ns::make_rational;
using ns::Rational;

namespace {

ns::TreeLikeCurve path_ab() { return ns::TreeLikeCurve({{{1, 1, 0}, {2, 1, 0}}, {{1, 2}}}); }
ns::Polarization halves() { return {{{1, make_rational(1, 2)}, {2, make_rational(1, 2)}}}; }

}  // namespace

TEST(BalanceStep, PathExample) {
  auto c = path_ab();
  auto step = ns::balance_step(c, ns::prune_ordering(c), {2, {{1, 5}, {2, -1}}}, halves(), 1);
  EXPECT_EQ(step.a_min, 1);
  EXPECT_EQ(step.a_max, 2);
  EXPECT_EQ(step.solution_count(), 2u);
  EXPECT_EQ(step.chosen, 1);
  EXPECT_EQ(step.value_before, 5);
  EXPECT_EQ(step.value_after, 3);
  EXPECT_EQ(step.result.multidegree, (std::map<ns::Id, ns::Int>{{1, 3}, {2, 1}}));
}

TEST(BalanceStep, PassingClassKeepsZeroWhenItIsSmallest) {
  auto c = path_ab();
  // S - L = r: window {0, 1}, the smaller one wins.
  auto step = ns::balance_step(c, ns::prune_ordering(c), {2, {{1, 3}, {2, 1}}}, halves(), 1);
  EXPECT_EQ(step.a_min, 0);
  EXPECT_EQ(step.a_max, 1);
  EXPECT_EQ(step.chosen, 0);
  EXPECT_EQ(step.result.multidegree, (std::map<ns::Id, ns::Int>{{1, 3}, {2, 1}}));
}

TEST(BalanceStep, SingleSolutionInsideWindow) {
  auto c = path_ab();
  // S = 2 sits strictly inside [1, 3].
  auto step = ns::balance_step(c, ns::prune_ordering(c), {2, {{1, 2}, {2, 2}}}, halves(), 1);
  EXPECT_EQ(step.solution_count(), 1u);
  EXPECT_EQ(step.chosen, 0);
}

TEST(BalanceStep, LowerEndpointMovesToUpper) {
  auto c = path_ab();
  // S = L = 1: a in {-1, 0}; -1 puts S on the upper endpoint.
  auto step = ns::balance_step(c, ns::prune_ordering(c), {2, {{1, 1}, {2, 3}}}, halves(), 1);
  EXPECT_EQ(step.a_min, -1);
  EXPECT_EQ(step.a_max, 0);
  EXPECT_EQ(step.chosen, -1);
  EXPECT_EQ(Rational(step.value_after), step.upper);
}

TEST(BalanceStep, Preconditions) {
  ns::TreeLikeCurve c({{{1, 0, 0}, {2, 0, 0}, {3, 0, 0}}, {{1, 2}, {2, 3}}});
  auto ord = ns::prune_ordering(c);
  ns::Polarization pol{{{1, make_rational(1, 3)}, {2, make_rational(1, 3)}, {3, make_rational(1, 3)}}};
  ns::BundleClass bc{2, {{1, 0}, {2, 0}, {3, 40}}};  // index 2 (component 3) is far outside its window
  try {
    ns::balance_step(c, ord, bc, pol, 1);
    FAIL();
  } catch (const ns::Error& e) {
    EXPECT_EQ(e.code(), ns::ErrorCode::PreconditionViolated);
  }
  EXPECT_THROW(ns::balance_step(c, ord, bc, pol, 0), ns::Error);
  EXPECT_THROW(ns::balance_step(c, ord, bc, pol, 3), ns::Error);
}

TEST(Balance, PathExample) {
  auto c = path_ab();
  auto res = ns::balance(c, {2, {{1, 5}, {2, -1}}}, halves());
  EXPECT_EQ(res.twist.coeffs, (std::map<ns::Id, ns::Int>{{1, 1}, {2, 0}}));
  EXPECT_EQ(res.balanced.multidegree, (std::map<ns::Id, ns::Int>{{1, 3}, {2, 1}}));
  EXPECT_EQ(res.steps.size(), 1u);
}

TEST(Balance, AlreadyBalancedPath) {
  auto c = path_ab();
  auto res = ns::balance(c, {2, {{1, 3}, {2, 1}}}, halves());
  EXPECT_EQ(res.twist, ns::TwistDivisor::zero(c));
}

TEST(Balance, SingleComponentIsNoOp) {
  ns::TreeLikeCurve c({{{5, 2, 0}}, {}});
  auto res = ns::balance(c, {3, {{5, 11}}}, {{{5, Rational(1)}}});
  EXPECT_TRUE(res.steps.empty());
  EXPECT_EQ(res.twist.coeffs.at(5), 0);
  EXPECT_EQ(res.balanced.multidegree.at(5), 11);
}

TEST(Balance, RandomInstances) {
  nt::Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    auto desc = nt::random_tree(rng, static_cast<std::size_t>(nt::uniform(rng, 1, 8)));
    ns::TreeLikeCurve c(desc);
    auto bc = nt::random_class(rng, c, nt::uniform(rng, 1, 4), 20);
    auto pol = nt::random_polarization(rng, c);
    auto res = ns::balance(c, bc, pol);

    ASSERT_EQ(res.steps.size(), c.size() - 1);
    ASSERT_EQ(res.twist.coeffs.at(res.ordering.perm.back()), 0);
    ASSERT_EQ(ns::twist(c, bc, res.twist), res.balanced);
    ASSERT_TRUE(ns::lambda_check(c, res.ordering, res.balanced, pol).pass());
    ASSERT_TRUE(nt::oracle_semistable(desc, res.ordering.perm, res.balanced, pol));
    ASSERT_EQ(res.balanced.total_degree(), bc.total_degree());
    ASSERT_EQ(ns::euler_char_total(c, res.balanced), ns::euler_char_total(c, bc));

    for (const auto& s : res.steps) {
      ASSERT_EQ(s.upper - s.lower, Rational(bc.rank));
      ASSERT_GE(s.solution_count(), 1u);
      ASSERT_LE(s.solution_count(), 2u);
      Rational excess = Rational(s.value_before) - s.lower;
      ASSERT_EQ(s.solution_count() == 2, ns::is_integer(excess / bc.rank));
      ASSERT_EQ(s.value_after, s.value_before - bc.rank * s.chosen);
    }
  }
}

TEST(Balance, EachStepKeepsHigherIndices) {
  nt::Rng rng(42);
  for (int trial = 0; trial < 150; ++trial) {
    ns::TreeLikeCurve c(nt::random_tree(rng, static_cast<std::size_t>(nt::uniform(rng, 2, 8))));
    auto bc = nt::random_class(rng, c, nt::uniform(rng, 1, 4), 20);
    auto pol = nt::random_polarization(rng, c);
    auto ord = ns::prune_ordering(c);
    for (std::size_t i = c.size(); i-- > 1;) {
      auto step = ns::balance_step(c, ord, bc, pol, i);
      auto rep = ns::lambda_check(c, ord, step.result, pol);
      for (std::size_t t = i; t <= c.size(); ++t) ASSERT_TRUE(rep.indices[t - 1].pass);
      bc = step.result;
    }
  }
}

TEST(UnbalanceReport, Examples) {
  auto c = path_ab();
  auto before = ns::unbalance_report(c, {2, {{1, 5}, {2, -1}}}, halves());
  EXPECT_EQ(before.at(0).distance, Rational(2));
  EXPECT_EQ(before.at(1).distance, Rational(0));
  for (const auto& e : ns::unbalance_report(c, {2, {{1, 3}, {2, 1}}}, halves())) EXPECT_EQ(e.distance, Rational(0));
}

TEST(UnbalanceReport, ZeroExactlyWhenPassing) {
  nt::Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    ns::TreeLikeCurve c(nt::random_tree(rng, static_cast<std::size_t>(nt::uniform(rng, 1, 8))));
    auto bc = nt::random_class(rng, c, nt::uniform(rng, 1, 4), 20);
    auto pol = nt::random_polarization(rng, c);
    auto rep = ns::lambda_check(c, ns::prune_ordering(c), bc, pol);
    auto dist = ns::unbalance_report(c, bc, pol);
    bool zero = std::all_of(dist.begin(), dist.end(), [](const auto& e) { return e.distance == 0; });
    ASSERT_EQ(zero, rep.pass());
    auto balanced = ns::balance(c, bc, pol).balanced;
    for (const auto& e : ns::unbalance_report(c, balanced, pol)) ASSERT_EQ(e.distance, Rational(0));
  }
}
