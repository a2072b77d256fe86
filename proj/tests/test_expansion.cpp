#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "kout/errors.hpp"
#include "kout/expansion.hpp"
#include "kout/hitting_set.hpp"
#include "oracles.hpp"

using namespace kout;

TEST(HittingSet, SmallCases) {
  EXPECT_EQ(minimum_hitting_set_size({{0, 1}, {1, 2}, {2, 3}}), std::optional<std::size_t>(2));
  EXPECT_EQ(minimum_hitting_set_size({}), std::optional<std::size_t>(0));
  EXPECT_EQ(minimum_hitting_set_size({{0}, {}}), std::nullopt);
  const auto y = find_hitting_set({{{0, 1}, {1, 2}}, {}, {1}});
  ASSERT_TRUE(y);
  EXPECT_EQ(*y, VertexSet({1}));
  EXPECT_FALSE(find_hitting_set({{{0}, {1}}, {}, {1}}));
}

TEST(HittingSet, ClassBudgets) {
  // Classes: 0,1 -> 0 and 2,3 -> 1. Sets {0,2}, {1,3}, {0,3}.
  HittingSetQuery query{{{0, 2}, {1, 3}, {0, 3}}, {0, 0, 1, 1}, {1, 1}};
  const auto y = find_hitting_set(query);
  ASSERT_TRUE(y);
  query.class_budget = {2, 0};
  EXPECT_TRUE(find_hitting_set(query));
  query.class_budget = {0, 1};
  EXPECT_FALSE(find_hitting_set(query));
}

TEST(HittingSet, MatchesEnumeration) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> vertex(0, 7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<Vertex>> sets(1 + trial % 6);
    for (auto& s : sets) {
      for (int i = 0; i < 3; ++i) s.push_back(static_cast<Vertex>(vertex(rng)));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    std::size_t best = 99;
    for (oracle::Mask y = 0; y < 256; ++y) {
      bool hits = true;
      for (const auto& s : sets) {
        bool any = false;
        for (Vertex v : s) any = any || (y >> v & 1);
        hits = hits && any;
      }
      if (hits) best = std::min<std::size_t>(best, oracle::popcount(y));
    }
    EXPECT_EQ(minimum_hitting_set_size(sets), std::optional<std::size_t>(best));
  }
}

TEST(LambdaExpansive, Examples) {
  EXPECT_TRUE(is_lambda_expansive(fixtures::triangle(), VertexSet({0}), 1.0));
  const auto killer = expansion_killer(fixtures::path3(), VertexSet({0}), 1.0);
  ASSERT_TRUE(killer);
  EXPECT_EQ(*killer, VertexSet({1}));
  for (double lambda : {0.0, 1.0, 10.0}) {
    EXPECT_TRUE(is_lambda_expansive(fixtures::single_edge(), VertexSet({0, 1, 2}), lambda));
  }
  EXPECT_THROW(is_lambda_expansive(fixtures::triangle(), VertexSet(), 1.0), InputError);
}

TEST(LambdaExpansive, AntitoneInLambda) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = fixtures::random_hypergraph(7, 3, 0.3, rng);
    const VertexSet x({static_cast<Vertex>(trial % 7)});
    bool previous = true;
    for (double lambda = 0.0; lambda <= 6.0; lambda += 0.5) {
      const bool now = is_lambda_expansive(h, x, lambda);
      if (now) EXPECT_TRUE(previous);
      previous = now;
      EXPECT_EQ(now, !oracle::killer(h, oracle::edge_mask(Edge(x.begin(), x.end())),
                                     floor_scaled(lambda, 1)));
    }
  }
}

TEST(Prop3, FixedExamples) {
  const auto single = check_prop3_hypothesis(fixtures::single_edge(), true);
  EXPECT_FALSE(single.verdict);
  ASSERT_TRUE(single.witness);
  EXPECT_EQ(single.witness->first, VertexSet({0}));
  EXPECT_EQ(single.witness->second, VertexSet({1}));
  EXPECT_EQ(single.pairs_checked, 1u);

  EXPECT_TRUE(check_prop3_hypothesis(fixtures::complete_graph(4), true).verdict);
  EXPECT_FALSE(check_prop3_hypothesis(fixtures::fano(), true).verdict);
  EXPECT_FALSE(check_prop3_hypothesis(fixtures::fano(), false).verdict);
}

TEST(Prop3, MatchesEnumerationAndWitnessesRecheck) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 2 + trial % 2;
    const auto h = fixtures::random_hypergraph(6 + trial % 2, r, 0.5 + 0.1 * (trial % 5), rng);
    for (bool strict : {true, false}) {
      const auto report = check_prop3_hypothesis(h, strict);
      ASSERT_EQ(report.verdict, oracle::expansion_hypothesis(h, strict));
      EXPECT_TRUE(report.exhaustive);
      if (!report.verdict) {
        const auto& [x, y] = *report.witness;
        const std::size_t bound = (r - 1) * x.size();
        EXPECT_TRUE(is_independent(h, x));
        EXPECT_TRUE(x.disjoint_from(y));
        EXPECT_LE(y.size(), strict ? bound - 1 : bound);
        EXPECT_EQ(edges_meeting(h, x, y), 0u);
      }
    }
  }
}

TEST(Prop3, SampledModeReportsNonExhaustive) {
  std::mt19937_64 rng(2);
  const auto h = fixtures::random_hypergraph(18, 3, 0.4, rng);
  const auto report = check_prop3_hypothesis(h, true, {16, 200, 1});
  EXPECT_FALSE(report.exhaustive);
  const auto again = check_prop3_hypothesis(h, true, {16, 200, 1});
  EXPECT_EQ(report.verdict, again.verdict);
  EXPECT_EQ(report.pairs_checked, again.pairs_checked);
}

TEST(Corollary, Examples) {
  EXPECT_TRUE(check_graph_corollary(fixtures::triangle()).verdict);
  const auto p3 = check_graph_corollary(fixtures::path3());
  EXPECT_FALSE(p3.verdict);
  EXPECT_EQ(*p3.witness, VertexSet({0, 2}));
  const auto isolated = check_graph_corollary(Hypergraph(3, 2, {{0, 1}}));
  EXPECT_FALSE(isolated.verdict);
  EXPECT_EQ(*isolated.witness, VertexSet({2}));
  EXPECT_THROW(check_graph_corollary(fixtures::fano()), InputError);
}

TEST(Corollary, MatchesEnumeration) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = fixtures::random_hypergraph(3 + trial % 6, 2, 0.45, rng);
    EXPECT_EQ(check_graph_corollary(g).verdict, oracle::neighbourhood_condition(g));
  }
}

TEST(Partite, Examples) {
  EXPECT_TRUE(check_prop6_hypothesis(fixtures::k22(), {0.4, 1.0}).verdict);
  const auto matching = Hypergraph::partite(2, 2, {{0, 2}, {1, 3}});
  EXPECT_FALSE(check_prop6_hypothesis(matching, {0.4, 1.0}).verdict);
  const auto lonely = Hypergraph::partite(2, 2, {{0, 2}, {0, 3}});
  const auto report = check_prop6_hypothesis(lonely, {0.4, 1.0});
  EXPECT_FALSE(report.verdict);
  EXPECT_EQ(report.witness->first, VertexSet({1}));
  EXPECT_EQ(report.witness->second, VertexSet());
  EXPECT_THROW(check_prop6_hypothesis(fixtures::triangle(), {0.4, 1.0}), InputError);
  EXPECT_THROW(check_prop6_hypothesis(fixtures::k22(), {0.5, 1.0}), InputError);
}

TEST(Partite, Defaults) {
  const auto p = PartiteExpansionParams::defaults(3);
  EXPECT_DOUBLE_EQ(p.lambda, 108.0);
  EXPECT_DOUBLE_EQ(p.epsilon, 1.0 / 648.0);
  EXPECT_TRUE(p.satisfies_bounds(3));
  EXPECT_FALSE((PartiteExpansionParams{0.1, 18.0}).satisfies_bounds(3));
}

TEST(Partite, MatchesEnumeration) {
  std::mt19937_64 rng(21);
  const std::vector<PartiteExpansionParams> params = {{0.4, 1.0}, {0.34, 1.5}, {0.2, 9.0}, {0.01, 32.0}};
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t r = 2 + trial % 2;
    const std::size_t b = 1 + trial % 3;
    const auto h = fixtures::random_partite(r, b, 0.75, rng);
    const auto& p = params[trial % params.size()];
    EXPECT_EQ(check_prop6_hypothesis(h, p).verdict,
              oracle::partite_hypothesis(h, b, p.epsilon, p.lambda));
  }
}

TEST(Independence, Examples) {
  EXPECT_EQ(independence_number(fixtures::complete_graph(6)).alpha, 1u);
  EXPECT_EQ(independence_number(Hypergraph(9, 3, {})).alpha, 9u);
  const auto fano = independence_number(fixtures::fano());
  EXPECT_EQ(fano.alpha, 4u);
  EXPECT_TRUE(fano.exact);
  EXPECT_TRUE(is_independent(fixtures::fano(), fano.witness));
}

TEST(Independence, MatchesEnumeration) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = fixtures::random_hypergraph(10, 2 + trial % 2, 0.3, rng);
    const auto result = independence_number(h);
    EXPECT_EQ(result.alpha, oracle::alpha(h));
    EXPECT_TRUE(is_independent(h, result.witness));
    EXPECT_EQ(result.witness.size(), result.alpha);
  }
}

TEST(Independence, BudgetGivesLowerBound) {
  std::mt19937_64 rng(1);
  const auto h = fixtures::random_hypergraph(30, 3, 0.05, rng);
  const auto partial = independence_number(h, 10);
  EXPECT_FALSE(partial.exact);
  EXPECT_TRUE(is_independent(h, partial.witness));
  EXPECT_LE(partial.alpha, independence_number(h).alpha);
}
