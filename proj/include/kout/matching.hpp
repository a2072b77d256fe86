#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kout/execution.hpp"
#include "kout/hypergraph.hpp"
#include "kout/lp.hpp"
#include "kout/rational.hpp"

namespace kout {

enum class SolveMode { kExact, kFloat };
const char* to_string(SolveMode mode);
SolveMode parse_solve_mode(std::string_view text);

/// Edge weights phi (indexed like h.edges()) with sum_{e ∋ v} phi(e) <= 1.
template <class Scalar>
struct BasicFractionalMatching {
  std::vector<Scalar> weights;
  Scalar total{};
};

/// Vertex weights w with sum_{v ∈ e} w(v) >= 1 for every edge.
template <class Scalar>
struct BasicFractionalCover {
  std::vector<Scalar> weights;
  Scalar total{};
};

using FractionalMatching = BasicFractionalMatching<Rational>;
using FractionalCover = BasicFractionalCover<Rational>;
using FloatFractionalMatching = BasicFractionalMatching<double>;
using FloatFractionalCover = BasicFractionalCover<double>;

/// max sum phi  s.t.  sum_{e ∋ v} phi(e) <= 1 for every vertex v.
LinearProgram matching_program(const Hypergraph& h);
/// min sum w  s.t.  sum_{v ∈ e} w(v) >= 1 for every edge e.
LinearProgram cover_program(const Hypergraph& h);

/// Fractional matching number with an optimal matching.
FractionalMatching nu_star(const Hypergraph& h);
FloatFractionalMatching nu_star_float(const Hypergraph& h, double tol = 1e-9);

/// Fractional cover number (minimum cover weight) with an optimal cover,
/// solved from the covering program.
FractionalCover tau_star(const Hypergraph& h);
FloatFractionalCover tau_star_float(const Hypergraph& h, double tol = 1e-9);

/// Optimal matching together with the cover read off the matching program's
/// duals; the pair satisfies complementary slackness.
std::pair<FractionalMatching, FractionalCover> matching_cover_pair(const Hypergraph& h);

/// |nu* - n/r| bound used for perfection in float mode.
inline constexpr double kFloatPerfectionTolerance = 1e-7;

/// n / r as an exact fraction.
Rational perfect_value(const Hypergraph& h);

/// nu* in the requested mode, with the perfection verdict.
struct NuStarOutcome {
  SolveMode mode = SolveMode::kExact;
  std::optional<Rational> exact;  // set in exact mode
  double value = 0.0;
  bool perfect = false;
};
NuStarOutcome solve_nu_star(const Hypergraph& h, SolveMode mode);

/// nu*(h) = n/r, exactly in exact mode, within kFloatPerfectionTolerance in
/// float mode.
bool has_perfect_fractional_matching(const Hypergraph& h, SolveMode mode = SolveMode::kExact);

struct CoverShapeReport {
  Rational tau_star;
  /// w = 1/r is the only cover of weight n/r.
  bool is_unique_uniform = false;
  /// Partite inputs only: every minimum cover is constant on each block.
  std::optional<bool> is_block_constant;
  /// [min, max] of w(v) over all minimum covers.
  std::vector<std::pair<Rational, Rational>> ranges;
};

/// Shape of the set of minimum fractional covers, found by probing the
/// optimal face of the covering program. Exact mode only.
CoverShapeReport cover_shape(const Hypergraph& h, SolveMode mode = SolveMode::kExact,
                             Execution execution = Execution::kParallel);

/// "nu_star p/q" followed by one "edge_index p/q" line per edge.
void write_matching(std::ostream& out, const FractionalMatching& m);
/// "tau_star p/q" followed by one "vertex p/q" line per vertex.
void write_cover(std::ostream& out, const FractionalCover& c);
FractionalMatching read_matching(std::istream& in);
FractionalCover read_cover(std::istream& in);

}  // namespace kout
