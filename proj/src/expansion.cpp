#include "kout/expansion.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <random>

#include "kout/errors.hpp"
#include "kout/hitting_set.hpp"
#include "kout/rng.hpp"
#include "parallel.hpp"

namespace kout {

namespace {

using Mask = std::uint64_t;

constexpr std::size_t kMaskLimit = 64;

Mask bit(Vertex v) { return Mask{1} << v; }

VertexSet set_of(Mask m) {
  std::vector<Vertex> ids;
  while (m != 0) {
    ids.push_back(static_cast<Vertex>(std::countr_zero(m)));
    m &= m - 1;
  }
  return VertexSet(std::move(ids));
}

std::vector<Mask> edge_masks(const Hypergraph& h) {
  std::vector<Mask> masks;
  masks.reserve(h.num_edges());
  for (const Edge& e : h.edges()) {
    Mask m = 0;
    for (Vertex v : e) m |= bit(v);
    masks.push_back(m);
  }
  return masks;
}

std::size_t ceil_scaled(double factor, std::size_t size) {
  const double x = factor * static_cast<double>(size);
  return static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))));
}

/// All nonempty independent sets of h among `pool` (a mask of allowed
/// vertices), ordered by size and then lexicographically.
std::vector<VertexSet> enumerate_independent(const Hypergraph& h, Mask pool) {
  const auto masks = edge_masks(h);
  std::vector<VertexSet> out;
  std::vector<Mask> level;
  for (Vertex v = 0; v < h.n(); ++v) {
    if ((pool & bit(v)) == 0) continue;
    bool ok = true;
    for (std::size_t e : h.incidence(v)) ok = ok && masks[e] != bit(v);
    if (ok) level.push_back(bit(v));
  }
  while (!level.empty()) {
    for (Mask m : level) out.push_back(set_of(m));
    std::vector<Mask> next;
    for (Mask m : level) {
      const unsigned top = 63u - static_cast<unsigned>(std::countl_zero(m));
      for (Vertex v = top + 1; v < h.n(); ++v) {
        if ((pool & bit(v)) == 0) continue;
        const Mask grown = m | bit(v);
        bool ok = true;
        for (std::size_t e : h.incidence(v)) {
          if ((masks[e] & ~grown) == 0) {
            ok = false;
            break;
          }
        }
        if (ok) next.push_back(grown);
      }
    }
    level = std::move(next);
  }
  return out;
}

/// Random independent sets of each size drawn from `pool`, sizes ascending,
/// stopping at the first size where none turns up.
std::vector<VertexSet> sample_independent(const Hypergraph& h, const std::vector<Vertex>& pool,
                                          const ScanBudget& budget, std::uint64_t stream) {
  std::vector<VertexSet> out;
  auto engine = make_engine(budget.seed, stream);
  std::vector<Vertex> scratch = pool;
  for (std::size_t size = 1; size <= pool.size(); ++size) {
    std::size_t found = 0;
    const std::size_t attempts = 20 * budget.samples_per_size;
    for (std::size_t a = 0; a < attempts && found < budget.samples_per_size; ++a) {
      for (std::size_t i = 0; i < size; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, scratch.size() - 1);
        std::swap(scratch[i], scratch[pick(engine)]);
      }
      VertexSet candidate(std::vector<Vertex>(scratch.begin(), scratch.begin() + size));
      if (!is_independent(h, candidate)) continue;
      out.push_back(std::move(candidate));
      ++found;
    }
    if (found == 0) break;
  }
  return out;
}

std::vector<std::vector<Vertex>> traces_outside(const Hypergraph& h, const VertexSet& x) {
  std::vector<std::size_t> meeting;
  for (Vertex v : x) {
    for (std::size_t e : h.incidence(v)) meeting.push_back(e);
  }
  std::sort(meeting.begin(), meeting.end());
  meeting.erase(std::unique(meeting.begin(), meeting.end()), meeting.end());
  std::vector<std::vector<Vertex>> traces;
  traces.reserve(meeting.size());
  for (std::size_t e : meeting) {
    std::vector<Vertex> rest;
    for (Vertex u : h.edge(e)) {
      if (!x.contains(u)) rest.push_back(u);
    }
    traces.push_back(std::move(rest));
  }
  return traces;
}

/// Index of the first candidate for which check(i) yields a witness, with
/// that witness. The parallel path evaluates candidates out of order but
/// skips everything past the best index found so far, so both paths agree.
template <class Witness, class Check>
std::optional<std::pair<std::size_t, Witness>> first_violation(std::size_t count,
                                                               Execution execution,
                                                               Check&& check) {
  if (execution == Execution::kSerial) {
    for (std::size_t i = 0; i < count; ++i) {
      if (auto w = check(i)) return std::make_pair(i, std::move(*w));
    }
    return std::nullopt;
  }
  std::atomic<std::size_t> best{count};
  std::optional<std::pair<std::size_t, Witness>> result;
  std::mutex result_mutex;
  detail::parallel_for(count, execution, [&](std::size_t i) {
    if (i > best.load(std::memory_order_relaxed)) return;
    auto w = check(i);
    if (!w) return;
    std::lock_guard<std::mutex> lock(result_mutex);
    if (!result || i < result->first) {
      result = std::make_pair(i, std::move(*w));
      best.store(i, std::memory_order_relaxed);
    }
  });
  return result;
}

Mask full_mask(std::size_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

}  // namespace

std::size_t floor_scaled(double lambda, std::size_t size) {
  const double x = lambda * static_cast<double>(size);
  if (x <= 0.0) return 0;
  return static_cast<std::size_t>(std::floor(x + 1e-9 * std::max(1.0, x)));
}

std::optional<VertexSet> expansion_killer(const Hypergraph& h, const VertexSet& x, double lambda) {
  if (x.empty()) throw InputError("expansion requires a nonempty set X");
  h.check_in_range(x);
  if (!(lambda >= 0.0)) throw InputError("lambda must be nonnegative");
  return find_hitting_set({traces_outside(h, x), {}, {floor_scaled(lambda, x.size())}});
}

bool is_lambda_expansive(const Hypergraph& h, const VertexSet& x, double lambda) {
  return !expansion_killer(h, x, lambda).has_value();
}

ExpansionReport check_prop3_hypothesis(const Hypergraph& h, bool strict, const ScanBudget& budget,
                                       Execution execution) {
  ExpansionReport report;
  std::vector<VertexSet> candidates;
  if (h.n() <= std::min(budget.exhaustive_max_n, kMaskLimit)) {
    candidates = enumerate_independent(h, full_mask(h.n()));
  } else {
    report.exhaustive = false;
    std::vector<Vertex> pool(h.n());
    for (std::size_t v = 0; v < h.n(); ++v) pool[v] = static_cast<Vertex>(v);
    candidates = sample_independent(h, pool, budget, rng_stream::kScanSample);
  }
  const std::size_t r = h.r();
  auto found = first_violation<VertexSet>(candidates.size(), execution,
                                          [&](std::size_t i) -> std::optional<VertexSet> {
    const VertexSet& x = candidates[i];
    const std::size_t limit = (r - 1) * x.size();
    if (strict && limit == 0) return std::nullopt;
    return find_hitting_set({traces_outside(h, x), {}, {strict ? limit - 1 : limit}});
  });
  if (found) {
    report.verdict = false;
    report.pairs_checked = found->first + 1;
    report.witness = std::make_pair(candidates[found->first], std::move(found->second));
  } else {
    report.pairs_checked = candidates.size();
  }
  return report;
}

CorollaryReport check_graph_corollary(const Hypergraph& g, const ScanBudget& budget,
                                      Execution execution) {
  if (g.r() != 2) throw InputError("graph corollary requires r = 2");
  CorollaryReport report;
  std::vector<VertexSet> candidates;
  if (g.n() <= std::min(budget.exhaustive_max_n, kMaskLimit)) {
    candidates = enumerate_independent(g, full_mask(g.n()));
  } else {
    report.exhaustive = false;
    std::vector<Vertex> pool(g.n());
    for (std::size_t v = 0; v < g.n(); ++v) pool[v] = static_cast<Vertex>(v);
    candidates = sample_independent(g, pool, budget, rng_stream::kScanSample);
  }
  auto found = first_violation<bool>(candidates.size(), execution,
                                     [&](std::size_t i) -> std::optional<bool> {
    std::vector<Vertex> neighbours;
    for (Vertex v : candidates[i]) {
      for (std::size_t e : g.incidence(v)) {
        const Edge& edge = g.edge(e);
        neighbours.push_back(edge[0] == v ? edge[1] : edge[0]);
      }
    }
    std::sort(neighbours.begin(), neighbours.end());
    neighbours.erase(std::unique(neighbours.begin(), neighbours.end()), neighbours.end());
    if (neighbours.size() < candidates[i].size()) return true;
    return std::nullopt;
  });
  if (found) {
    report.verdict = false;
    report.sets_checked = found->first + 1;
    report.witness = candidates[found->first];
  } else {
    report.sets_checked = candidates.size();
  }
  return report;
}

PartiteExpansionParams PartiteExpansionParams::defaults(std::size_t r) {
  const double lambda = 4.0 * std::pow(static_cast<double>(r), 3);
  return {1.0 / (2.0 * static_cast<double>(r) * lambda), lambda};
}

bool PartiteExpansionParams::satisfies_bounds(std::size_t r) const {
  const double rr = static_cast<double>(r);
  return epsilon > 0.0 && epsilon < 0.5 && lambda > 2.0 * rr * rr;
}

ExpansionReport check_prop6_hypothesis(const Hypergraph& h, const PartiteExpansionParams& params,
                                       const ScanBudget& budget, Execution execution) {
  if (!h.is_partite()) throw InputError("partite expansion check requires a partition");
  if (!(params.epsilon > 0.0 && params.epsilon < 0.5)) {
    throw InputError("epsilon must lie in (0, 1/2)");
  }
  if (!(params.lambda > 0.0)) throw InputError("lambda must be positive");

  const std::size_t b = *h.block_size();
  const std::size_t r = h.r();
  const std::size_t small_max = floor_scaled(params.epsilon, b);       // regime (i): |T| <= eps b
  const std::size_t large_min = std::max<std::size_t>(1, ceil_scaled(params.epsilon, b));
  const std::size_t large_budget = floor_scaled(1.0 - params.epsilon, b);

  struct Candidate {
    VertexSet t;
    std::size_t block;
    std::size_t per_block_budget;
  };
  std::vector<Candidate> candidates;
  ExpansionReport report;
  const bool exhaustive = b <= std::min(budget.exhaustive_max_n, kMaskLimit);
  report.exhaustive = exhaustive;

  // Block subsets are always independent (every edge crosses all blocks).
  // In regime (ii) a larger T only adds edges, so the smallest admissible
  // size decides it.
  const auto blocks = h.blocks();
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<VertexSet> subsets;
    if (exhaustive) {
      Mask pool = 0;
      for (Vertex v : blocks[i]) pool |= bit(v);
      const Hypergraph empty(h.n(), r, {});
      subsets = enumerate_independent(empty, pool);
    } else {
      const Hypergraph empty(h.n(), r, {});
      std::vector<Vertex> pool(blocks[i].begin(), blocks[i].end());
      ScanBudget capped = budget;
      subsets = sample_independent(empty, pool, capped, rng_stream::kScanSample + 1 + i);
    }
    for (auto& t : subsets) {
      if (t.size() <= small_max) {
        candidates.push_back({t, i, std::min(b, floor_scaled(params.lambda, t.size()))});
      }
      if (t.size() == large_min) candidates.push_back({t, i, large_budget});
    }
  }

  std::vector<std::size_t> vertex_class(h.n());
  for (std::size_t v = 0; v < h.n(); ++v) vertex_class[v] = h.block_of(static_cast<Vertex>(v));

  auto found = first_violation<VertexSet>(candidates.size(), execution,
                                          [&](std::size_t k) -> std::optional<VertexSet> {
    const Candidate& c = candidates[k];
    std::vector<std::size_t> budgets(r, c.per_block_budget);
    budgets[c.block] = 0;
    return find_hitting_set({traces_outside(h, c.t), vertex_class, std::move(budgets)});
  });
  if (found) {
    report.verdict = false;
    report.pairs_checked = found->first + 1;
    report.witness = std::make_pair(candidates[found->first].t, std::move(found->second));
  } else {
    report.pairs_checked = candidates.size();
  }
  return report;
}

namespace {

class IndependentSetSearch {
 public:
  IndependentSetSearch(const Hypergraph& h, std::size_t node_budget)
      : h_(h), masks_(edge_masks(h)), node_budget_(node_budget) {}

  void run() { branch(0, full_mask(h_.n())); }

  Mask best() const { return best_; }
  bool exhausted() const { return nodes_ > node_budget_; }

 private:
  void branch(Mask chosen, Mask candidates) {
    if (++nodes_ > node_budget_) return;
    const auto size = static_cast<std::size_t>(std::popcount(chosen));
    if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best_size_) return;
    if (candidates == 0) {
      best_ = chosen;
      best_size_ = size;
      return;
    }
    const auto v = static_cast<Vertex>(std::countr_zero(candidates));
    const Mask rest = candidates & ~bit(v);
    // Take v: drop every candidate that would complete an edge through v.
    const Mask grown = chosen | bit(v);
    Mask allowed = rest;
    for (std::size_t e : h_.incidence(v)) {
      const Mask missing = masks_[e] & ~grown;
      if (std::popcount(missing) == 1) allowed &= ~missing;
    }
    branch(grown, allowed);
    branch(chosen, rest);
  }

  const Hypergraph& h_;
  std::vector<Mask> masks_;
  std::size_t node_budget_;
  std::size_t nodes_ = 0;
  Mask best_ = 0;
  std::size_t best_size_ = 0;
};

}  // namespace

IndependenceResult independence_number(const Hypergraph& h, std::size_t node_budget) {
  if (h.n() > kMaskLimit) {
    throw InputError("independence_number supports at most 64 vertices");
  }
  IndependentSetSearch search(h, node_budget);
  search.run();
  IndependenceResult result;
  result.witness = set_of(search.best());
  result.alpha = result.witness.size();
  result.exact = !search.exhausted();
  return result;
}

}  // namespace kout
