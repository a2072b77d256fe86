#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

#include "kout/execution.hpp"
#include "kout/hypergraph.hpp"

namespace kout {

/// Outcome of an expansion-hypothesis check. A failing check carries the
/// first violating pair (X, Y) in canonical order: by size of X, then
/// lexicographically, then (for partite checks) by block.
struct ExpansionReport {
  bool verdict = true;
  std::optional<std::pair<VertexSet, VertexSet>> witness;
  /// Candidate sets X examined, up to and including the witness.
  std::size_t pairs_checked = 0;
  /// False when candidate sets were sampled rather than enumerated.
  bool exhaustive = true;
};

/// Enumeration limits. Hypergraphs (or partite blocks) with more than
/// exhaustive_max_n vertices are checked on up to samples_per_size random
/// candidate sets of each size, drawn from `seed`.
struct ScanBudget {
  std::size_t exhaustive_max_n = 16;
  std::size_t samples_per_size = 10'000;
  std::uint64_t seed = 0;
};

/// floor(lambda * size), guarded against representation error in lambda.
std::size_t floor_scaled(double lambda, std::size_t size);

/// A set Y ⊆ V \ x with |Y| <= floor(lambda |x|) meeting every edge that
/// meets x, or nullopt if x is lambda-expansive. An edge inside x can never
/// be killed, so such an x is expansive for every lambda.
std::optional<VertexSet> expansion_killer(const Hypergraph& h, const VertexSet& x, double lambda);

/// True iff x is lambda-expansive. x must be nonempty.
bool is_lambda_expansive(const Hypergraph& h, const VertexSet& x, double lambda);

/// Every independent X is expansive against all Y disjoint from X with
/// |Y| < (r-1)|X| (strict) or |Y| <= (r-1)|X| (non-strict).
ExpansionReport check_prop3_hypothesis(const Hypergraph& h, bool strict,
                                       const ScanBudget& budget = {},
                                       Execution execution = Execution::kParallel);

struct CorollaryReport {
  /// |N(I)| >= |I| for every independent I.
  bool verdict = true;
  std::optional<VertexSet> witness;
  std::size_t sets_checked = 0;
  bool exhaustive = true;
};

/// Neighbourhood condition for graphs (r = 2); equivalent to having a
/// perfect fractional matching.
CorollaryReport check_graph_corollary(const Hypergraph& g, const ScanBudget& budget = {},
                                      Execution execution = Execution::kParallel);

struct PartiteExpansionParams {
  double epsilon = 0.0;
  double lambda = 0.0;

  /// lambda = 4 r^3, epsilon = 1 / (2 r lambda).
  static PartiteExpansionParams defaults(std::size_t r);
  /// epsilon in (0, 1/2) and lambda > 2 r^2.
  bool satisfies_bounds(std::size_t r) const;
};

/// For every block i, nonempty T ⊆ V_i and U = ∪_{j≠i} U_j with U_j ⊆ V_j,
/// some edge meets T and misses U whenever
///   (i)  |T| <= eps b and |U_j| <= lambda |T|, or
///   (ii) |T| >= eps b and |U_j| <= (1 - eps) b,
/// b being the block size. Sizes are floored. Requires a partition,
/// epsilon in (0, 1/2) and lambda > 0.
ExpansionReport check_prop6_hypothesis(const Hypergraph& h, const PartiteExpansionParams& params,
                                       const ScanBudget& budget = {},
                                       Execution execution = Execution::kParallel);

struct IndependenceResult {
  std::size_t alpha = 0;
  VertexSet witness;
  /// False when the node budget ran out; alpha is then a lower bound.
  bool exact = true;
};

/// Maximum independent set by branch and bound (n <= 64).
IndependenceResult independence_number(const Hypergraph& h,
                                       std::size_t node_budget = 50'000'000);

}  // namespace kout
