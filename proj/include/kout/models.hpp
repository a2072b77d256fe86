#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "kout/execution.hpp"
#include "kout/hypergraph.hpp"

namespace kout {

enum class HostKind { kComplete, kPartite };
const char* to_string(HostKind kind);
HostKind parse_host_kind(std::string_view text);

/// Host hypergraph for the k-out model. For the complete host n is the
/// vertex count; for the partite host n is the block size and there are r*n
/// vertices in contiguous blocks.
struct HostModel {
  HostKind kind = HostKind::kComplete;
  std::size_t n = 0;
  std::size_t r = 0;

  std::size_t num_vertices() const;
  /// |H_v|: C(n-1, r-1) or n^(r-1). Throws InputError past 2^63.
  std::uint64_t incident_edge_count() const;
  /// Throws InputError unless r >= 1 and the host is nonempty.
  void validate() const;
};

/// C(n, k), throwing InputError when it does not fit in 63 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct KOutSample {
  HostModel host;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  /// choices[v] = E_v in draw order.
  std::vector<std::vector<Edge>> choices;
  Hypergraph hypergraph;
};

/// Every vertex picks a uniform k-subset of its incident host edges; the
/// sample is the union. Vertex v draws from the stream (seed, v), so the
/// result does not depend on execution.
KOutSample sample_kout(const HostModel& host, std::size_t k, std::uint64_t seed,
                       Execution execution = Execution::kParallel);

/// E_v for one vertex, drawn from the same stream sample_kout uses.
std::vector<Edge> sample_vertex_choice(const HostModel& host, std::size_t k, Vertex v,
                                       std::uint64_t seed);

/// Frequencies of E_v (as a set) for one vertex over repeated samples.
struct UniformityStats {
  std::size_t outcomes = 0;
  std::size_t trials = 0;
  std::vector<std::size_t> counts;
  double expected = 0.0;
  double chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
  /// Largest |count - expected| in binomial standard deviations.
  double max_abs_z = 0.0;
};

/// Requires C(|H_v|, k) <= 1e6 so the outcome space can be enumerated.
UniformityStats per_vertex_uniformity_check(const HostModel& host, std::size_t k, Vertex v,
                                            std::size_t trials, std::uint64_t seed);

/// k used in the complete-host proof: (2r^2)^r.
std::uint64_t complete_host_preset_k(std::size_t r);
/// k used in the partite-host proof: 2r / eps^r with lambda = 4r^3,
/// eps = 1/(2 r lambda).
std::uint64_t partite_host_preset_k(std::size_t r);

struct StopRule {
  enum class Kind { kAtT, kAtStep, kAtMark };
  Kind kind = Kind::kAtT;
  std::size_t step = 0;
  double mark = 0.0;

  /// Stop once no vertex is isolated.
  static StopRule at_T() { return {}; }
  /// Stop after t edges (or when the host is exhausted).
  static StopRule at_step(std::size_t t) { return {Kind::kAtStep, t, 0.0}; }
  /// Continue past T until every edge with mark <= lambda is present.
  static StopRule at_mark(double lambda) { return {Kind::kAtMark, 0, lambda}; }
};

/// Random r-graph process on [n]: each step adds a uniform non-edge. Edge t
/// carries mark xi_t, the t-th order statistic of C(n, r) uniforms, so G(x)
/// is the prefix of edges with mark <= x.
struct ProcessTrace {
  std::size_t n = 0;
  std::size_t r = 0;
  std::uint64_t seed = 0;
  std::vector<Edge> order;
  std::vector<double> marks;
  /// First t (1-based) with no isolated vertex in H_t, if reached.
  std::optional<std::size_t> T;
  /// Every edge with mark <= horizon has been realized.
  double horizon = 0.0;

  /// H_t: the first t edges.
  Hypergraph prefix(std::size_t t) const;
};

ProcessTrace run_process(std::size_t n, std::size_t r, std::uint64_t seed,
                         StopRule stop = StopRule::at_T());

struct ThresholdDiagnostics {
  double epsilon = 0.0;
  double g = 0.0;
  /// c = eps log n
  double c_threshold = 0.0;
  /// (log n - g) / C(n-1, r-1)
  double sigma = 0.0;
  /// (log n + g) / C(n-1, r-1)
  double beta = 0.0;
  /// Mark of the T-th edge.
  double Lambda = 0.0;
  bool lambda_in_window = false;
  /// Vertices of degree <= c in G(sigma).
  VertexSet W_sigma;
  /// W_sigma with every vertex sharing a beta-edge with it.
  VertexSet N;
};

/// Default slack g(n) = log log n.
double default_slack(std::size_t n);

/// beta clamped to [0, 1]; running the process with at_mark of this value
/// realizes everything threshold_diagnostics needs.
double diagnostic_mark_bound(std::size_t n, std::size_t r, double g);

/// Throws InputError when the trace has no T, lacks marks, or stops short of
/// the marks sigma and beta require.
ThresholdDiagnostics threshold_diagnostics(const ProcessTrace& trace, double epsilon = 0.1,
                                           std::optional<double> g = std::nullopt);

/// Hypergraph text preceded by '#' metadata lines (host, k, seed).
void write_kout_sample(std::ostream& out, const KOutSample& sample);
/// Realized edges in process order, preceded by '#' metadata lines (seed, T,
/// horizon) and one "# xi <t> <mark>" line per edge.
void write_process_trace(std::ostream& out, const ProcessTrace& trace);

}  // namespace kout
