#pragma once

#include <random>
#include <vector>

#include "kout/hypergraph.hpp"

namespace fixtures {

using kout::Edge;
using kout::Hypergraph;

inline Hypergraph triangle() { return Hypergraph(3, 2, {{0, 1}, {1, 2}, {0, 2}}); }
inline Hypergraph path3() { return Hypergraph(3, 2, {{0, 1}, {1, 2}}); }
inline Hypergraph k2() { return Hypergraph(2, 2, {{0, 1}}); }
inline Hypergraph single_edge() { return Hypergraph(3, 3, {{0, 1, 2}}); }

inline Hypergraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (kout::Vertex a = 0; a < n; ++a) {
    for (kout::Vertex b = a + 1; b < n; ++b) edges.push_back({a, b});
  }
  return Hypergraph(n, 2, edges);
}

inline Hypergraph fano() {
  return Hypergraph(7, 3, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

inline Hypergraph k22() { return Hypergraph::partite(2, 2, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

/// Every r-subset of [n] kept independently with probability p.
inline Hypergraph random_hypergraph(std::size_t n, std::size_t r, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::vector<Edge> edges;
  std::vector<kout::Vertex> pick(r);
  for (std::size_t i = 0; i < r; ++i) pick[i] = static_cast<kout::Vertex>(i);
  while (r <= n) {
    if (keep(rng)) edges.emplace_back(pick.begin(), pick.end());
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return Hypergraph(n, r, edges);
}

/// Every crossing r-tuple of r blocks of size b kept with probability p.
inline Hypergraph random_partite(std::size_t r, std::size_t b, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::vector<Edge> edges;
  std::vector<std::size_t> digit(r, 0);
  while (true) {
    if (keep(rng)) {
      Edge e(r);
      for (std::size_t j = 0; j < r; ++j) e[j] = static_cast<kout::Vertex>(j * b + digit[j]);
      edges.push_back(e);
    }
    std::size_t j = r;
    while (j > 0 && ++digit[j - 1] == b) digit[--j] = 0;
    if (j == 0) break;
  }
  return Hypergraph::partite(r, b, edges);
}

}  // namespace fixtures
