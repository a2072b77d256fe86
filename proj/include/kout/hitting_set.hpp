#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kout/hypergraph.hpp"

namespace kout {

/// Does some Y meet every set in `sets` while taking at most
/// class_budget[c] vertices from each class c? With vertex_class empty all
/// vertices are in class 0.
struct HittingSetQuery {
  std::vector<std::vector<Vertex>> sets;
  std::vector<std::size_t> vertex_class;
  std::vector<std::size_t> class_budget;
};

/// Exact branch-and-bound search. Returns a hitting set within budget, or
/// nullopt when none exists (in particular when some set is empty).
std::optional<VertexSet> find_hitting_set(const HittingSetQuery& query);

/// Size of a minimum hitting set, or nullopt if a set is empty.
std::optional<std::size_t> minimum_hitting_set_size(const std::vector<std::vector<Vertex>>& sets);

}  // namespace kout
