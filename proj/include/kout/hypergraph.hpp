#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kout {

using Vertex = std::uint32_t;

/// An edge is a sorted list of r distinct vertex ids.
using Edge = std::vector<Vertex>;

/// Sorted set of distinct vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members);
  /// Sorts the input; duplicate ids are an InputError.
  explicit VertexSet(std::vector<Vertex> members);

  /// {0, 1, ..., n-1}
  static VertexSet all(std::size_t n);

  std::span<const Vertex> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;
  bool disjoint_from(const VertexSet& other) const;
  /// Largest id + 1, or 0 for the empty set.
  std::size_t bound() const { return members_.empty() ? 0 : members_.back() + 1; }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

/// "{0 1 2}"; the empty set is "{}".
std::string to_string(const VertexSet& s);
VertexSet parse_vertex_set(std::string_view text);
std::string to_string(const Edge& e);

/// Immutable r-uniform hypergraph on vertices 0..n-1.
///
/// Edges are stored sorted and deduplicated, together with per-vertex
/// incidence lists. A partite hypergraph carries r contiguous blocks of equal
/// size: block i is [i*b, (i+1)*b). Every edge must meet each block once.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Validates every edge (size r, distinct ids in range) and merges
  /// duplicates. Throws InputError on violation.
  Hypergraph(std::size_t n, std::size_t r, std::vector<Edge> edges);

  /// r-partite hypergraph with blocks of size block_size (n = r * block_size).
  static Hypergraph partite(std::size_t r, std::size_t block_size,
                            std::vector<Edge> edges);

  std::size_t n() const { return n_; }
  std::size_t r() const { return r_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_.at(index); }

  /// Indices (into edges()) of edges containing v, ascending.
  std::span<const std::size_t> incidence(Vertex v) const;
  std::size_t degree(Vertex v) const { return incidence(v).size(); }

  /// Index of e in edges(), if present. e need not be sorted.
  std::optional<std::size_t> find_edge(Edge e) const;

  bool is_partite() const { return block_size_.has_value(); }
  std::optional<std::size_t> block_size() const { return block_size_; }
  /// Block index of v; requires is_partite().
  std::size_t block_of(Vertex v) const;
  std::vector<VertexSet> blocks() const;

  /// Throws InputError when some member of s is >= n.
  void check_in_range(const VertexSet& s) const;
  void check_in_range(Vertex v) const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.block_size_ == b.block_size_ &&
           a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t r_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<std::size_t> incidence_;
  std::optional<std::size_t> block_size_;
};

/// Edges containing v, in lexicographic order.
std::vector<Edge> incident_edges(const Hypergraph& h, Vertex v);

/// True iff no edge of h is a subset of s.
bool is_independent(const Hypergraph& h, const VertexSet& s);

/// Vertices with no incident edge.
VertexSet isolated_vertices(const Hypergraph& h);

/// Number of edges that meet x and are disjoint from avoiding. The two sets
/// must be disjoint.
std::size_t edges_meeting(const Hypergraph& h, const VertexSet& x,
                          const VertexSet& avoiding);

/// Text format: optional '#' comment lines, a header "r n" or
/// "r n partite <block_size>", then one edge per line.
Hypergraph read_hypergraph(std::istream& in);
Hypergraph parse_hypergraph(std::string_view text);
void write_hypergraph(std::ostream& out, const Hypergraph& h);
std::string format_hypergraph(const Hypergraph& h);

}  // namespace kout
