#include "kout/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "kout/errors.hpp"

namespace kout {

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : VertexSet(std::vector<Vertex>(members)) {}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw InputError("vertex set contains a duplicate id");
  }
}

VertexSet VertexSet::all(std::size_t n) {
  std::vector<Vertex> ids(n);
  for (std::size_t v = 0; v < n; ++v) ids[v] = static_cast<Vertex>(v);
  return VertexSet(std::move(ids));
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool VertexSet::disjoint_from(const VertexSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return false;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

namespace {

std::string join_ids(std::span<const Vertex> ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(ids[i]);
  }
  out += '}';
  return out;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' ||
                               line[i] == ',')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
           line[j] != ',') {
      ++j;
    }
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::uint64_t parse_unsigned(std::string_view token, std::string_view what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw InputError("expected " + std::string(what) + ", got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string to_string(const VertexSet& s) { return join_ids(s.members()); }

std::string to_string(const Edge& e) { return join_ids(e); }

VertexSet parse_vertex_set(std::string_view text) {
  auto first = text.find_first_not_of(" \t");
  auto last = text.find_last_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw InputError("empty vertex set text");
  text = text.substr(first, last - first + 1);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw InputError("vertex set must be written as {v1 v2 ...}");
  }
  std::vector<Vertex> ids;
  for (auto token : split_tokens(text.substr(1, text.size() - 2))) {
    ids.push_back(static_cast<Vertex>(parse_unsigned(token, "vertex id")));
  }
  return VertexSet(std::move(ids));
}

Hypergraph::Hypergraph(std::size_t n, std::size_t r, std::vector<Edge> edges)
    : n_(n), r_(r) {
  if (r == 0) throw InputError("uniformity r must be positive");
  for (auto& e : edges) {
    if (e.size() != r) {
      throw InputError("edge " + to_string(e) + " does not have exactly " +
                       std::to_string(r) + " vertices");
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InputError("edge " + to_string(e) + " repeats a vertex");
    }
    if (e.back() >= n) {
      throw InputError("edge " + to_string(e) + " has a vertex outside 0.." +
                       std::to_string(n == 0 ? 0 : n - 1));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : edges_) {
    for (Vertex v : e) ++degree[v];
  }
  incidence_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) incidence_offsets_[v + 1] = incidence_offsets_[v] + degree[v];
  incidence_.resize(incidence_offsets_[n]);
  std::vector<std::size_t> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    for (Vertex v : edges_[i]) incidence_[cursor[v]++] = i;
  }
}

Hypergraph Hypergraph::partite(std::size_t r, std::size_t block_size, std::vector<Edge> edges) {
  if (block_size == 0) throw InputError("partite block size must be positive");
  Hypergraph h(r * block_size, r, std::move(edges));
  h.block_size_ = block_size;
  for (const auto& e : h.edges_) {
    // Sorted edge over contiguous blocks: the i-th vertex must lie in block i.
    for (std::size_t i = 0; i < r; ++i) {
      if (e[i] / block_size != i) {
        throw InputError("edge " + to_string(e) + " does not meet every block exactly once");
      }
    }
  }
  return h;
}

std::span<const std::size_t> Hypergraph::incidence(Vertex v) const {
  check_in_range(v);
  return std::span<const std::size_t>(incidence_).subspan(
      incidence_offsets_[v], incidence_offsets_[v + 1] - incidence_offsets_[v]);
}

std::optional<std::size_t> Hypergraph::find_edge(Edge e) const {
  std::sort(e.begin(), e.end());
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::size_t Hypergraph::block_of(Vertex v) const {
  if (!block_size_) throw InputError("hypergraph has no partition");
  check_in_range(v);
  return v / *block_size_;
}

std::vector<VertexSet> Hypergraph::blocks() const {
  std::vector<VertexSet> out;
  if (!block_size_) return out;
  for (std::size_t i = 0; i < r_; ++i) {
    std::vector<Vertex> ids;
    for (std::size_t j = 0; j < *block_size_; ++j) {
      ids.push_back(static_cast<Vertex>(i * *block_size_ + j));
    }
    out.emplace_back(std::move(ids));
  }
  return out;
}

void Hypergraph::check_in_range(Vertex v) const {
  if (v >= n_) {
    throw InputError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n_));
  }
}

void Hypergraph::check_in_range(const VertexSet& s) const {
  if (s.bound() > n_) {
    throw InputError("vertex set " + to_string(s) + " out of range for n=" + std::to_string(n_));
  }
}

std::vector<Edge> incident_edges(const Hypergraph& h, Vertex v) {
  std::vector<Edge> out;
  for (std::size_t i : h.incidence(v)) out.push_back(h.edge(i));
  return out;
}

bool is_independent(const Hypergraph& h, const VertexSet& s) {
  h.check_in_range(s);
  for (Vertex v : s) {
    for (std::size_t i : h.incidence(v)) {
      const Edge& e = h.edge(i);
      // Test each edge once, from its smallest member inside s.
      if (e.front() != v) continue;
      if (std::all_of(e.begin(), e.end(), [&](Vertex u) { return s.contains(u); })) return false;
    }
  }
  return true;
}

VertexSet isolated_vertices(const Hypergraph& h) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < h.n(); ++v) {
    if (h.degree(static_cast<Vertex>(v)) == 0) out.push_back(static_cast<Vertex>(v));
  }
  return VertexSet(std::move(out));
}

std::size_t edges_meeting(const Hypergraph& h, const VertexSet& x, const VertexSet& avoiding) {
  h.check_in_range(x);
  h.check_in_range(avoiding);
  if (!x.disjoint_from(avoiding)) throw InputError("edges_meeting requires disjoint sets");
  std::vector<std::size_t> seen;
  for (Vertex v : x) {
    for (std::size_t i : h.incidence(v)) seen.push_back(i);
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  return static_cast<std::size_t>(std::count_if(seen.begin(), seen.end(), [&](std::size_t i) {
    const Edge& e = h.edge(i);
    return std::none_of(e.begin(), e.end(), [&](Vertex u) { return avoiding.contains(u); });
  }));
}

Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  std::optional<std::size_t> r, n, block_size;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (!r) {
      if (tokens.size() != 2 && tokens.size() != 4) {
        throw InputError("line " + std::to_string(line_no) +
                         ": header must be 'r n' or 'r n partite <block_size>'");
      }
      r = parse_unsigned(tokens[0], "r");
      n = parse_unsigned(tokens[1], "n");
      if (tokens.size() == 4) {
        if (tokens[2] != "partite") {
          throw InputError("line " + std::to_string(line_no) + ": unknown header flag '" +
                           std::string(tokens[2]) + "'");
        }
        block_size = parse_unsigned(tokens[3], "block size");
        if (*block_size * *r != *n) {
          throw InputError("partite header requires n = r * block_size");
        }
      }
      continue;
    }
    Edge e;
    for (auto token : tokens) e.push_back(static_cast<Vertex>(parse_unsigned(token, "vertex id")));
    edges.push_back(std::move(e));
  }
  if (!r) throw InputError("missing 'r n' header");
  if (block_size) return Hypergraph::partite(*r, *block_size, std::move(edges));
  return Hypergraph(*n, *r, std::move(edges));
}

Hypergraph parse_hypergraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.r() << ' ' << h.n();
  if (h.is_partite()) out << " partite " << *h.block_size();
  out << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i > 0) out << ' ';
      out << e[i];
    }
    out << '\n';
  }
}

std::string format_hypergraph(const Hypergraph& h) {
  std::ostringstream out;
  write_hypergraph(out, h);
  return out.str();
}

}  // namespace kout
