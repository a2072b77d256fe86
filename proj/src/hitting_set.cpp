#include "kout/hitting_set.hpp"

#include <algorithm>

namespace kout {

namespace {

class HittingSearch {
 public:
  HittingSearch(std::vector<std::vector<Vertex>> sets, const std::vector<std::size_t>& vertex_class,
                std::vector<std::size_t> budget)
      : sets_(std::move(sets)), vertex_class_(vertex_class), remaining_(std::move(budget)) {
    Vertex bound = 0;
    for (const auto& s : sets_) {
      for (Vertex v : s) bound = std::max<Vertex>(bound, v + 1);
    }
    chosen_.assign(bound, 0);
    hit_count_.assign(sets_.size(), 0);
    containing_.resize(bound);
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      for (Vertex v : sets_[i]) containing_[v].push_back(i);
    }
  }

  bool search() {
    std::size_t total_budget = 0;
    for (std::size_t b : remaining_) total_budget += b;
    // Pairwise disjoint unhit sets each need their own vertex.
    if (disjoint_unhit_lower_bound() > total_budget) return false;

    std::optional<std::size_t> branch_set;
    std::size_t fewest = 0;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (hit_count_[i] > 0) continue;
      std::size_t options = 0;
      for (Vertex v : sets_[i]) options += can_choose(v) ? 1 : 0;
      if (options == 0) return false;
      if (!branch_set || options < fewest) {
        branch_set = i;
        fewest = options;
      }
    }
    if (!branch_set) return true;
    for (Vertex v : sets_[*branch_set]) {
      if (!can_choose(v)) continue;
      choose(v, true);
      if (search()) return true;
      choose(v, false);
    }
    return false;
  }

  VertexSet solution() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < chosen_.size(); ++v) {
      if (chosen_[v]) out.push_back(v);
    }
    return VertexSet(std::move(out));
  }

 private:
  std::size_t class_of(Vertex v) const { return vertex_class_.empty() ? 0 : vertex_class_[v]; }

  bool can_choose(Vertex v) const { return !chosen_[v] && remaining_[class_of(v)] > 0; }

  void choose(Vertex v, bool take) {
    chosen_[v] = take ? 1 : 0;
    if (take) {
      --remaining_[class_of(v)];
    } else {
      ++remaining_[class_of(v)];
    }
    for (std::size_t i : containing_[v]) hit_count_[i] += take ? 1 : -1;
  }

  std::size_t disjoint_unhit_lower_bound() {
    scratch_.assign(chosen_.size(), 0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (hit_count_[i] > 0) continue;
      const auto& s = sets_[i];
      if (std::any_of(s.begin(), s.end(), [&](Vertex v) { return scratch_[v] != 0; })) continue;
      for (Vertex v : s) scratch_[v] = 1;
      ++count;
    }
    return count;
  }

  std::vector<std::vector<Vertex>> sets_;
  const std::vector<std::size_t>& vertex_class_;
  std::vector<std::size_t> remaining_;
  std::vector<char> chosen_;
  std::vector<int> hit_count_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<char> scratch_;
};

// Sorted, deduplicated, with supersets of other members removed.
std::vector<std::vector<Vertex>> minimal_sets(std::vector<std::vector<Vertex>> sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::vector<Vertex>> kept;
  for (auto& s : sets) {
    const bool redundant = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
      return std::includes(s.begin(), s.end(), k.begin(), k.end());
    });
    if (!redundant) kept.push_back(std::move(s));
  }
  return kept;
}

}  // namespace

std::optional<VertexSet> find_hitting_set(const HittingSetQuery& query) {
  auto sets = minimal_sets(query.sets);
  if (!sets.empty() && sets.front().empty()) return std::nullopt;
  std::vector<std::size_t> budget = query.class_budget;
  if (budget.empty()) budget.push_back(0);
  HittingSearch search(std::move(sets), query.vertex_class, std::move(budget));
  if (!search.search()) return std::nullopt;
  return search.solution();
}

std::optional<std::size_t> minimum_hitting_set_size(const std::vector<std::vector<Vertex>>& sets) {
  for (const auto& s : sets) {
    if (s.empty()) return std::nullopt;
  }
  for (std::size_t budget = 0;; ++budget) {
    if (find_hitting_set({sets, {}, {budget}})) return budget;
  }
}

}  // namespace kout
