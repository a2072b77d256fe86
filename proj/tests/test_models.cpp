#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "kout/errors.hpp"
#include "kout/models.hpp"
#include "kout/rng.hpp"

using namespace kout;

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 2, 4));
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 3));
  EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
  auto a = make_engine(5, 1);
  auto b = make_engine(5, 1);
  EXPECT_EQ(a(), b());
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(60, 3), 34220u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_THROW(binomial(200, 100), InputError);
}

TEST(HostModel, Counts) {
  const HostModel complete{HostKind::kComplete, 10, 3};
  EXPECT_EQ(complete.num_vertices(), 10u);
  EXPECT_EQ(complete.incident_edge_count(), 36u);
  const HostModel partite{HostKind::kPartite, 4, 3};
  EXPECT_EQ(partite.num_vertices(), 12u);
  EXPECT_EQ(partite.incident_edge_count(), 16u);
  EXPECT_EQ(parse_host_kind("partite"), HostKind::kPartite);
  EXPECT_THROW(parse_host_kind("cycle"), InputError);
}

TEST(SampleKOut, CompleteHostK1) {
  const HostModel host{HostKind::kComplete, 20, 3};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = sample_kout(host, 1, seed);
    EXPECT_GE(s.hypergraph.num_edges(), 7u);
    EXPECT_LE(s.hypergraph.num_edges(), 20u);
    EXPECT_TRUE(isolated_vertices(s.hypergraph).empty());
  }
}

TEST(SampleKOut, ChoicesAreDistinctAndIncident) {
  const HostModel host{HostKind::kComplete, 12, 3};
  const auto s = sample_kout(host, 5, 9);
  EXPECT_LE(s.hypergraph.num_edges(), 12u * 5u);
  for (Vertex v = 0; v < 12; ++v) {
    auto choice = s.choices[v];
    ASSERT_EQ(choice.size(), 5u);
    for (const Edge& e : choice) {
      EXPECT_TRUE(std::binary_search(e.begin(), e.end(), v));
      EXPECT_TRUE(s.hypergraph.find_edge(e).has_value());
    }
    std::sort(choice.begin(), choice.end());
    EXPECT_EQ(std::adjacent_find(choice.begin(), choice.end()), choice.end());
  }
}

TEST(SampleKOut, Deterministic) {
  const HostModel host{HostKind::kComplete, 30, 3};
  const auto a = sample_kout(host, 4, 77);
  const auto b = sample_kout(host, 4, 77, Execution::kSerial);
  EXPECT_EQ(a.hypergraph, b.hypergraph);
  EXPECT_EQ(a.choices, b.choices);
  EXPECT_NE(sample_kout(host, 4, 78).hypergraph, a.hypergraph);
}

TEST(SampleKOut, PartiteHost) {
  const HostModel host{HostKind::kPartite, 5, 3};
  const auto s = sample_kout(host, 3, 4);
  ASSERT_TRUE(s.hypergraph.is_partite());
  for (const Edge& e : s.hypergraph.edges()) {
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(e[i] / 5, i);
  }
  EXPECT_TRUE(isolated_vertices(s.hypergraph).empty());
}

TEST(SampleKOut, KTooLarge) {
  EXPECT_THROW(sample_kout({HostKind::kComplete, 5, 2}, 5, 1), InputError);
  EXPECT_NO_THROW(sample_kout({HostKind::kComplete, 5, 2}, 4, 1));
}

TEST(Uniformity, GraphHost) {
  const auto stats = per_vertex_uniformity_check({HostKind::kComplete, 5, 2}, 1, 0, 40000, 3);
  EXPECT_EQ(stats.outcomes, 4u);
  EXPECT_DOUBLE_EQ(stats.expected, 10000.0);
  EXPECT_LT(stats.max_abs_z, 5.0);
}

TEST(Uniformity, TripleHostAndFullSelection) {
  const auto triples = per_vertex_uniformity_check({HostKind::kComplete, 4, 3}, 1, 0, 30000, 5);
  EXPECT_EQ(triples.outcomes, 3u);
  EXPECT_LT(triples.max_abs_z, 5.0);
  const auto all = per_vertex_uniformity_check({HostKind::kComplete, 5, 2}, 4, 2, 100, 1);
  EXPECT_EQ(all.outcomes, 1u);
  EXPECT_EQ(all.counts[0], 100u);
  const auto pairs = per_vertex_uniformity_check({HostKind::kPartite, 3, 2}, 2, 1, 30000, 2);
  EXPECT_EQ(pairs.outcomes, 3u);
  EXPECT_LT(pairs.max_abs_z, 5.0);
}

TEST(Presets, Values) {
  EXPECT_EQ(complete_host_preset_k(2), 64u);
  EXPECT_EQ(complete_host_preset_k(3), 5832u);
  EXPECT_EQ(partite_host_preset_k(2), 65536u);
  EXPECT_THROW(partite_host_preset_k(6), InputError);
}

TEST(Process, NEqualsR) {
  const auto trace = run_process(3, 3, 1);
  ASSERT_EQ(trace.T, std::optional<std::size_t>(1));
  EXPECT_EQ(trace.order.front(), (Edge{0, 1, 2}));
}

TEST(Process, StoppingTimeInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto trace = run_process(20, 3, seed);
    ASSERT_TRUE(trace.T);
    const std::size_t T = *trace.T;
    EXPECT_GE(T, 7u);
    EXPECT_EQ(trace.order.size(), T);
    EXPECT_TRUE(isolated_vertices(trace.prefix(T)).empty());
    const auto before = isolated_vertices(trace.prefix(T - 1));
    ASSERT_FALSE(before.empty());
    const Edge& last = trace.order.back();
    EXPECT_TRUE(std::any_of(last.begin(), last.end(), [&](Vertex v) { return before.contains(v); }));
    auto sorted = trace.order;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
    EXPECT_TRUE(std::is_sorted(trace.marks.begin(), trace.marks.end()));
  }
}

TEST(Process, GraphOnThreeVerticesStopsAtTwo) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) EXPECT_EQ(run_process(3, 2, seed).T, 2u);
}

TEST(Process, StopRules) {
  const auto full = run_process(8, 2, 4, StopRule::at_step(28));
  EXPECT_EQ(full.order.size(), 28u);
  EXPECT_DOUBLE_EQ(full.horizon, 1.0);
  const auto prefix = run_process(8, 2, 4, StopRule::at_step(5));
  EXPECT_EQ(prefix.order.size(), 5u);
  EXPECT_TRUE(std::equal(prefix.order.begin(), prefix.order.end(), full.order.begin()));
  EXPECT_TRUE(std::equal(prefix.marks.begin(), prefix.marks.end(), full.marks.begin()));
  const auto marked = run_process(8, 2, 4, StopRule::at_mark(0.5));
  EXPECT_DOUBLE_EQ(marked.horizon, 0.5);
  for (std::size_t t = 0; t < full.order.size(); ++t) {
    EXPECT_EQ(full.marks[t] <= 0.5 || t < *marked.T, t < marked.order.size());
  }
}

TEST(Process, MarksLookUniform) {
  // Mark of a uniformly placed edge: the mean of all C(n, r) marks is 1/2.
  double total = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto trace = run_process(7, 2, seed, StopRule::at_step(21));
    for (double m : trace.marks) total += m;
    count += trace.marks.size();
  }
  EXPECT_NEAR(total / static_cast<double>(count), 0.5, 0.01);
}

TEST(Diagnostics, GenericRun) {
  const std::size_t n = 60;
  const double g = default_slack(n);
  const auto trace = run_process(n, 3, 12, StopRule::at_mark(diagnostic_mark_bound(n, 3, g)));
  const auto d = threshold_diagnostics(trace, 0.1, g);
  EXPECT_NEAR(d.c_threshold, 0.1 * std::log(60.0), 1e-12);
  EXPECT_NEAR(d.sigma, (std::log(60.0) - g) / 1711.0, 1e-12);
  EXPECT_NEAR(d.beta, (std::log(60.0) + g) / 1711.0, 1e-12);
  EXPECT_EQ(d.Lambda, trace.marks[*trace.T - 1]);
  for (Vertex v : d.W_sigma) EXPECT_TRUE(d.N.contains(v));
}

TEST(Diagnostics, ExtremeSlack) {
  const auto trace = run_process(10, 3, 3, StopRule::at_step(120));
  const auto low = threshold_diagnostics(trace, 0.1, 100.0);
  EXPECT_LE(low.sigma, 0.0);
  EXPECT_EQ(low.W_sigma, VertexSet::all(10));
  EXPECT_GE(low.beta, 1.0);
  EXPECT_EQ(low.N, VertexSet::all(10));
}

TEST(Diagnostics, RejectsShortTraces) {
  const auto trace = run_process(40, 3, 2);
  EXPECT_THROW(threshold_diagnostics(trace, 0.1, 300.0), InputError);
  EXPECT_THROW(threshold_diagnostics(run_process(40, 3, 2, StopRule::at_step(3)), 0.1), InputError);
}

TEST(Serialization, TraceAndSample) {
  const auto trace = run_process(6, 3, 1);
  std::stringstream out;
  write_process_trace(out, trace);
  const auto h = read_hypergraph(out);
  EXPECT_EQ(h, trace.prefix(trace.order.size()));
  const auto sample = sample_kout({HostKind::kPartite, 3, 2}, 2, 5);
  std::stringstream s;
  write_kout_sample(s, sample);
  EXPECT_EQ(read_hypergraph(s), sample.hypergraph);
}
