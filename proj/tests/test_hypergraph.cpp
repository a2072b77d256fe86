#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "kout/errors.hpp"
#include "kout/hypergraph.hpp"
#include "oracles.hpp"

using namespace kout;

TEST(VertexSet, SortsAndRejectsDuplicates) {
  VertexSet s({3, 1, 2});
  EXPECT_EQ(to_string(s), "{1 2 3}");
  EXPECT_THROW(VertexSet({1, 1}), InputError);
  EXPECT_EQ(parse_vertex_set("{4 0}"), VertexSet({0, 4}));
  EXPECT_EQ(parse_vertex_set("{}"), VertexSet());
  EXPECT_TRUE(VertexSet({0, 2}).disjoint_from(VertexSet({1, 3})));
  EXPECT_FALSE(VertexSet({0, 2}).disjoint_from(VertexSet({2})));
}

TEST(Hypergraph, ValidatesEdges) {
  EXPECT_THROW(Hypergraph(3, 3, {{0, 1}}), InputError);
  EXPECT_THROW(Hypergraph(3, 2, {{0, 0}}), InputError);
  EXPECT_THROW(Hypergraph(3, 2, {{0, 3}}), InputError);
  EXPECT_THROW(Hypergraph::partite(2, 2, {{0, 1}}), InputError);
}

TEST(Hypergraph, SortsAndMergesDuplicates) {
  Hypergraph h(4, 2, {{3, 1}, {1, 3}, {0, 2}});
  ASSERT_EQ(h.num_edges(), 2u);
  EXPECT_EQ(h.edge(0), (Edge{0, 2}));
  EXPECT_EQ(h.edge(1), (Edge{1, 3}));
  EXPECT_EQ(h.find_edge({3, 1}), std::optional<std::size_t>(1));
}

TEST(Hypergraph, IncidentEdges) {
  Hypergraph one(3, 3, {{0, 1, 2}});
  EXPECT_EQ(incident_edges(one, 1), (std::vector<Edge>{{0, 1, 2}}));
  EXPECT_TRUE(incident_edges(Hypergraph(5, 3, {}), 2).empty());
  const auto f = fixtures::fano();
  for (Vertex v = 0; v < 7; ++v) EXPECT_EQ(incident_edges(f, v).size(), 3u);
  EXPECT_THROW(incident_edges(f, 7), InputError);
}

TEST(Hypergraph, Independence) {
  Hypergraph one(3, 3, {{0, 1, 2}});
  EXPECT_TRUE(is_independent(one, VertexSet({0, 1})));
  EXPECT_FALSE(is_independent(one, VertexSet({0, 1, 2})));
  EXPECT_TRUE(is_independent(fixtures::fano(), VertexSet({3, 4, 5, 6})));
  EXPECT_FALSE(is_independent(fixtures::fano(), VertexSet({0, 1, 2, 3})));
}

TEST(Hypergraph, IsolatedVertices) {
  EXPECT_EQ(isolated_vertices(Hypergraph(4, 3, {{0, 1, 2}})), VertexSet({3}));
  EXPECT_EQ(isolated_vertices(Hypergraph(5, 3, {})), VertexSet::all(5));
}

TEST(Hypergraph, EdgesMeeting) {
  Hypergraph one(3, 3, {{0, 1, 2}});
  EXPECT_EQ(edges_meeting(one, VertexSet({0}), VertexSet({1})), 0u);
  EXPECT_EQ(edges_meeting(one, VertexSet({0}), VertexSet()), 1u);
  EXPECT_EQ(edges_meeting(fixtures::triangle(), VertexSet({0}), VertexSet({1})), 1u);
  EXPECT_THROW(edges_meeting(one, VertexSet({0}), VertexSet({0})), InputError);
}

TEST(Hypergraph, IndependenceMatchesEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = fixtures::random_hypergraph(7, 3, 0.3, rng);
    for (oracle::Mask s = 0; s < 128; ++s) {
      const VertexSet set = oracle::to_set(s);
      ASSERT_EQ(is_independent(h, set), oracle::independent(h, s));
      VertexSet rest;
      std::vector<Vertex> others;
      for (Vertex v = 0; v < 7; ++v) {
        if (!(s >> v & 1)) others.push_back(v);
      }
      // Edges meeting s but avoiding V \ s are exactly the edges inside s.
      const std::size_t inside = edges_meeting(h, set, VertexSet(others));
      ASSERT_EQ(inside == 0, is_independent(h, set) || s == 0);
    }
  }
}

TEST(Hypergraph, PartiteBlocks) {
  const auto h = fixtures::k22();
  ASSERT_TRUE(h.is_partite());
  EXPECT_EQ(h.block_size(), std::optional<std::size_t>(2));
  EXPECT_EQ(h.block_of(3), 1u);
  EXPECT_EQ(h.blocks()[0], VertexSet({0, 1}));
  for (const Edge& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) EXPECT_EQ(h.block_of(e[i]), i);
  }
}

TEST(Hypergraph, TextRoundTrip) {
  for (const auto& h : {fixtures::fano(), fixtures::k22(), Hypergraph(4, 2, {})}) {
    EXPECT_EQ(parse_hypergraph(format_hypergraph(h)), h);
  }
  const auto h = parse_hypergraph("# comment\n3 4\n0,1,2\n3\t2 1\n");
  EXPECT_EQ(h.num_edges(), 2u);
  EXPECT_THROW(parse_hypergraph("3 4\n0 1\n"), InputError);
  EXPECT_THROW(parse_hypergraph(""), InputError);
}
