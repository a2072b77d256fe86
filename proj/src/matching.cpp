#include "kout/matching.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "kout/errors.hpp"
#include "parallel.hpp"

namespace kout {

const char* to_string(SolveMode mode) { return mode == SolveMode::kExact ? "exact" : "float"; }

SolveMode parse_solve_mode(std::string_view text) {
  if (text == "exact") return SolveMode::kExact;
  if (text == "float") return SolveMode::kFloat;
  throw InputError("unknown mode '" + std::string(text) + "' (expected exact or float)");
}

// Both programs leave the [0,1] bounds implicit: the vertex rows already cap
// every phi(e) at 1, and lowering any w(v) > 1 to 1 keeps a cover feasible,
// so neither optimum nor optimal face changes.
LinearProgram matching_program(const Hypergraph& h) {
  LinearProgram lp(Objective::kMaximize, h.num_edges());
  lp.upper_bounds.assign(h.num_edges(), std::nullopt);
  for (auto& c : lp.objective) c = 1;
  for (std::size_t v = 0; v < h.n(); ++v) {
    std::vector<Term> terms;
    for (std::size_t e : h.incidence(static_cast<Vertex>(v))) terms.push_back({e, Rational(1)});
    lp.add_constraint(std::move(terms), RowSense::kLessEqual, Rational(1));
  }
  return lp;
}

LinearProgram cover_program(const Hypergraph& h) {
  LinearProgram lp(Objective::kMinimize, h.n());
  lp.upper_bounds.assign(h.n(), std::nullopt);
  for (auto& c : lp.objective) c = 1;
  for (const Edge& e : h.edges()) {
    std::vector<Term> terms;
    for (Vertex v : e) terms.push_back({v, Rational(1)});
    lp.add_constraint(std::move(terms), RowSense::kGreaterEqual, Rational(1));
  }
  return lp;
}

namespace {

template <class Solution>
void require_optimal(const Solution& s, const char* what) {
  if (s.status != LPStatus::kOptimal) {
    throw SolverError(std::string(what) + " program reported " + to_string(s.status));
  }
}

}  // namespace

FractionalMatching nu_star(const Hypergraph& h) {
  if (h.num_edges() == 0) return {};
  const LPSolution s = solve_exact(matching_program(h));
  require_optimal(s, "matching");
  return {s.primal, s.objective};
}

FloatFractionalMatching nu_star_float(const Hypergraph& h, double tol) {
  if (h.num_edges() == 0) return {};
  const FloatLPSolution s = solve_float(matching_program(h), tol);
  require_optimal(s, "matching");
  return {s.primal, s.objective};
}

FractionalCover tau_star(const Hypergraph& h) {
  if (h.num_edges() == 0) return {std::vector<Rational>(h.n(), Rational(0)), Rational(0)};
  const LPSolution s = solve_exact(cover_program(h));
  require_optimal(s, "cover");
  return {s.primal, s.objective};
}

FloatFractionalCover tau_star_float(const Hypergraph& h, double tol) {
  if (h.num_edges() == 0) return {std::vector<double>(h.n(), 0.0), 0.0};
  const FloatLPSolution s = solve_float(cover_program(h), tol);
  require_optimal(s, "cover");
  return {s.primal, s.objective};
}

std::pair<FractionalMatching, FractionalCover> matching_cover_pair(const Hypergraph& h) {
  if (h.num_edges() == 0) {
    return {FractionalMatching{}, FractionalCover{std::vector<Rational>(h.n(), Rational(0)), 0}};
  }
  const LPSolution s = solve_exact(matching_program(h), {Orientation::kPrimal});
  require_optimal(s, "matching");
  FractionalCover cover{s.dual, 0};
  for (const auto& w : cover.weights) cover.total += w;
  return {FractionalMatching{s.primal, s.objective}, std::move(cover)};
}

Rational perfect_value(const Hypergraph& h) {
  return make_rational(static_cast<long>(h.n()), static_cast<long>(h.r()));
}

NuStarOutcome solve_nu_star(const Hypergraph& h, SolveMode mode) {
  NuStarOutcome out;
  out.mode = mode;
  const Rational target = perfect_value(h);
  if (mode == SolveMode::kExact) {
    FractionalMatching m = nu_star(h);
    out.value = m.total.get_d();
    out.perfect = m.total == target;
    out.exact = std::move(m.total);
  } else {
    const FloatFractionalMatching m = nu_star_float(h);
    out.value = m.total;
    out.perfect = std::abs(m.total - target.get_d()) <= kFloatPerfectionTolerance;
  }
  return out;
}

bool has_perfect_fractional_matching(const Hypergraph& h, SolveMode mode) {
  return solve_nu_star(h, mode).perfect;
}

CoverShapeReport cover_shape(const Hypergraph& h, SolveMode mode, Execution execution) {
  if (mode != SolveMode::kExact) throw InputError("cover_shape requires exact mode");
  CoverShapeReport report;
  const LinearProgram lp = cover_program(h);
  report.tau_star = tau_star(h).total;
  const std::size_t n = h.n();

  std::vector<Rational> extremes(2 * n);
  detail::parallel_for(2 * n, execution, [&](std::size_t k) {
    const auto sense = k % 2 == 0 ? ProbeSense::kMinimize : ProbeSense::kMaximize;
    extremes[k] = probe_optimal_face(lp, report.tau_star, k / 2, sense);
  });
  report.ranges.reserve(n);
  for (std::size_t v = 0; v < n; ++v) report.ranges.emplace_back(extremes[2 * v], extremes[2 * v + 1]);

  const Rational uniform = make_rational(1, static_cast<long>(h.r()));
  report.is_unique_uniform = report.tau_star == perfect_value(h);
  for (const auto& [lo, hi] : report.ranges) {
    if (lo != uniform || hi != uniform) report.is_unique_uniform = false;
  }

  if (!h.is_partite()) return report;

  // Equal per-vertex ranges are necessary for block-constancy; when some
  // range is not a point, pairwise probes of w(u) - w(u') decide it.
  bool constant = true;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const VertexSet& block : h.blocks()) {
    const auto& first = report.ranges[*block.begin()];
    bool points = true;
    for (Vertex v : block) {
      if (report.ranges[v] != first) constant = false;
      if (report.ranges[v].first != report.ranges[v].second) points = false;
    }
    if (!constant) break;
    if (points) continue;
    for (Vertex u : block) {
      for (Vertex w : block) {
        if (u != w) pairs.emplace_back(u, w);
      }
    }
  }
  if (constant && !pairs.empty()) {
    std::vector<char> separated(pairs.size(), 0);
    detail::parallel_for(pairs.size(), execution, [&](std::size_t k) {
      const Term direction[] = {{pairs[k].first, Rational(1)}, {pairs[k].second, Rational(-1)}};
      const Rational gap =
          probe_optimal_face(lp, report.tau_star, direction, ProbeSense::kMaximize);
      separated[k] = sgn(gap) != 0;
    });
    for (char s : separated) {
      if (s) constant = false;
    }
  }
  report.is_block_constant = constant;
  return report;
}

void write_matching(std::ostream& out, const FractionalMatching& m) {
  out << "nu_star " << to_fraction_string(m.total) << '\n';
  for (std::size_t e = 0; e < m.weights.size(); ++e) {
    out << e << ' ' << to_fraction_string(m.weights[e]) << '\n';
  }
}

void write_cover(std::ostream& out, const FractionalCover& c) {
  out << "tau_star " << to_fraction_string(c.total) << '\n';
  for (std::size_t v = 0; v < c.weights.size(); ++v) {
    out << v << ' ' << to_fraction_string(c.weights[v]) << '\n';
  }
}

namespace {

std::pair<Rational, std::vector<Rational>> read_weights(std::istream& in, const std::string& tag) {
  std::string line;
  std::pair<Rational, std::vector<Rational>> out;
  bool header = false;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string first, second;
    if (!(fields >> first)) continue;
    if (!(fields >> second)) throw InputError("malformed solution line '" + line + "'");
    if (!header) {
      if (first != tag) throw InputError("expected '" + tag + "' header");
      out.first = parse_rational(second);
      header = true;
      continue;
    }
    if (first != std::to_string(out.second.size())) {
      throw InputError("solution index " + first + " out of order");
    }
    out.second.push_back(parse_rational(second));
  }
  if (!header) throw InputError("missing '" + tag + "' header");
  Rational sum = 0;
  for (const auto& w : out.second) sum += w;
  if (sum != out.first) throw InputError("weights do not sum to the stated " + tag);
  return out;
}

}  // namespace

FractionalMatching read_matching(std::istream& in) {
  auto [total, weights] = read_weights(in, "nu_star");
  return {std::move(weights), std::move(total)};
}

FractionalCover read_cover(std::istream& in) {
  auto [total, weights] = read_weights(in, "tau_star");
  return {std::move(weights), std::move(total)};
}

}  // namespace kout
