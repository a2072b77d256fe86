#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "kout/errors.hpp"
#include "kout/matching.hpp"
#include "oracles.hpp"

using namespace kout;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

}  // namespace

TEST(NuStar, FixedValues) {
  const auto single = nu_star(Hypergraph(3, 3, {{0, 1, 2}}));
  EXPECT_EQ(single.total, 1);
  EXPECT_EQ(single.weights, std::vector<Rational>{1});

  const auto tri = nu_star(fixtures::triangle());
  EXPECT_EQ(tri.total, q(3, 2));
  for (const auto& w : tri.weights) EXPECT_EQ(w, q(1, 2));

  EXPECT_EQ(nu_star(fixtures::fano()).total, q(7, 3));
  EXPECT_EQ(nu_star(fixtures::path3()).total, 1);
  EXPECT_EQ(nu_star(Hypergraph(4, 2, {})).total, 0);
}

TEST(TauStar, FixedValues) {
  EXPECT_EQ(tau_star(Hypergraph(3, 3, {{0, 1, 2}})).total, 1);
  const auto tri = tau_star(fixtures::triangle());
  EXPECT_EQ(tri.total, q(3, 2));
  for (const auto& w : tri.weights) EXPECT_EQ(w, q(1, 2));
  EXPECT_EQ(tau_star(Hypergraph(4, 3, {{0, 1, 2}})).total, 1);
}

TEST(Perfection, Examples) {
  EXPECT_TRUE(has_perfect_fractional_matching(Hypergraph(6, 3, {{0, 1, 2}, {3, 4, 5}})));
  EXPECT_FALSE(has_perfect_fractional_matching(fixtures::path3()));
  EXPECT_TRUE(has_perfect_fractional_matching(fixtures::fano()));
  EXPECT_TRUE(has_perfect_fractional_matching(fixtures::fano(), SolveMode::kFloat));
  EXPECT_FALSE(has_perfect_fractional_matching(Hypergraph(4, 3, {{0, 1, 2}})));
}

TEST(Duality, RandomInstancesMatchOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 2 + trial % 2;
    const auto h = fixtures::random_hypergraph(6, r, 0.35, rng);
    const auto nu = nu_star(h);
    const auto tau = tau_star(h);
    EXPECT_EQ(nu.total, tau.total);
    EXPECT_LE(nu.total, perfect_value(h));
    if (h.num_edges() <= 7) EXPECT_EQ(nu.total, oracle::nu_star(h));
    if (!isolated_vertices(h).empty()) EXPECT_FALSE(has_perfect_fractional_matching(h));
  }
}

TEST(Duality, PairSatisfiesComplementarySlackness) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = fixtures::random_hypergraph(8, 3, 0.2, rng);
    const auto [m, c] = matching_cover_pair(h);
    ASSERT_EQ(m.total, c.total);
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      Rational load = 0;
      for (Vertex v : h.edge(e)) load += c.weights[v];
      EXPECT_GE(load, 1);
      if (sgn(m.weights[e]) > 0) EXPECT_EQ(load, 1);
    }
    for (Vertex v = 0; v < h.n(); ++v) {
      Rational load = 0;
      for (std::size_t e : h.incidence(v)) load += m.weights[e];
      EXPECT_LE(load, 1);
      if (sgn(c.weights[v]) > 0) EXPECT_EQ(load, 1);
    }
  }
}

TEST(FloatMode, AgreesWithExact) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = fixtures::random_hypergraph(12, 3, 0.1, rng);
    const auto exact = solve_nu_star(h, SolveMode::kExact);
    const auto approx = solve_nu_star(h, SolveMode::kFloat);
    EXPECT_NEAR(approx.value, exact.value, 1e-9);
    EXPECT_EQ(approx.perfect, exact.perfect);
    EXPECT_NEAR(tau_star_float(h).total, exact.value, 1e-9);
  }
}

TEST(CoverShape, FixedExamples) {
  const auto k4 = cover_shape(fixtures::complete_graph(4));
  EXPECT_TRUE(k4.is_unique_uniform);
  for (const auto& [lo, hi] : k4.ranges) {
    EXPECT_EQ(lo, q(1, 2));
    EXPECT_EQ(hi, q(1, 2));
  }
  const auto k2 = cover_shape(fixtures::k2());
  EXPECT_FALSE(k2.is_unique_uniform);
  EXPECT_EQ(k2.ranges[0], std::make_pair(q(0), q(1)));
  const auto k22 = cover_shape(fixtures::k22());
  EXPECT_FALSE(k22.is_unique_uniform);
  ASSERT_TRUE(k22.is_block_constant.has_value());
  EXPECT_TRUE(*k22.is_block_constant);
  EXPECT_FALSE(cover_shape(fixtures::triangle()).is_block_constant.has_value());
  EXPECT_THROW(cover_shape(fixtures::k2(), SolveMode::kFloat), InputError);
}

TEST(CoverShape, BlockConstancyNeedsPairProbes) {
  // Blocks {0,1} and {2,3}, edges {0,2} and {1,3}: each vertex ranges over
  // [0,1] but w = (1,0,0,1) is optimal and not constant on a block.
  const auto h = Hypergraph::partite(2, 2, {{0, 2}, {1, 3}});
  const auto shape = cover_shape(h);
  EXPECT_EQ(shape.ranges[0], std::make_pair(q(0), q(1)));
  EXPECT_EQ(shape.ranges[1], std::make_pair(q(0), q(1)));
  EXPECT_FALSE(*shape.is_block_constant);
}

TEST(CoverShape, RangesMatchFaceVertices) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const auto h = trial % 3 == 0 ? fixtures::random_partite(2, 2, 0.7, rng)
                                  : fixtures::random_hypergraph(5, 2 + trial % 2, 0.6, rng);
    const auto shape = cover_shape(h);
    const auto face = oracle::optimal_covers(h);
    ASSERT_EQ(shape.tau_star, oracle::sum(face[0]));
    bool uniform_only = shape.tau_star == perfect_value(h);
    for (std::size_t v = 0; v < h.n(); ++v) {
      Rational lo = face[0][v], hi = face[0][v];
      for (const auto& z : face) {
        lo = std::min(lo, z[v]);
        hi = std::max(hi, z[v]);
      }
      EXPECT_EQ(shape.ranges[v], std::make_pair(lo, hi));
      uniform_only = uniform_only && lo == hi && lo == q(1, static_cast<long>(h.r()));
    }
    EXPECT_EQ(shape.is_unique_uniform, uniform_only);
    if (h.is_partite()) {
      bool constant = true;
      for (const auto& z : face) {
        for (Vertex v = 0; v < h.n(); ++v) {
          constant = constant && z[v] == z[h.block_of(v) * *h.block_size()];
        }
      }
      EXPECT_EQ(*shape.is_block_constant, constant);
    }
  }
}

TEST(Serialization, RoundTrip) {
  const auto [m, c] = matching_cover_pair(fixtures::fano());
  std::stringstream ms, cs;
  write_matching(ms, m);
  write_cover(cs, c);
  EXPECT_EQ(ms.str().substr(0, 12), "nu_star 7/3\n");
  const auto m2 = read_matching(ms);
  const auto c2 = read_cover(cs);
  EXPECT_EQ(m2.total, m.total);
  EXPECT_EQ(m2.weights, m.weights);
  EXPECT_EQ(c2.weights, c.weights);
  std::stringstream bad("nu_star 1/2\n0 1/2\n1 1/2\n");
  EXPECT_THROW(read_matching(bad), InputError);
}

TEST(SolveMode, Parse) {
  EXPECT_EQ(parse_solve_mode("exact"), SolveMode::kExact);
  EXPECT_EQ(parse_solve_mode("float"), SolveMode::kFloat);
  EXPECT_THROW(parse_solve_mode("fast"), InputError);
}
