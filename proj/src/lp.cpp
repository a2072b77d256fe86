#include "kout/lp.hpp"

#include <limits>
#include <string>

#include "kout/errors.hpp"
#include "simplex.hpp"

namespace kout {

LinearProgram::LinearProgram(Objective sense, std::size_t num_columns)
    : sense(sense), objective(num_columns, Rational(0)), upper_bounds(num_columns, Rational(1)) {}

std::size_t LinearProgram::add_constraint(std::vector<Term> terms, RowSense row_sense,
                                          Rational rhs) {
  constraints.push_back(Constraint{std::move(terms), row_sense, std::move(rhs)});
  return constraints.size() - 1;
}

void LinearProgram::validate() const {
  if (upper_bounds.size() != objective.size()) {
    throw InputError("linear program has " + std::to_string(objective.size()) +
                     " objective entries but " + std::to_string(upper_bounds.size()) +
                     " bounds");
  }
  for (const auto& u : upper_bounds) {
    if (u && sgn(*u) < 0) throw InputError("negative upper bound");
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (const Term& t : constraints[i].terms) {
      if (t.column >= objective.size()) {
        throw InputError("constraint " + std::to_string(i) + " references column " +
                         std::to_string(t.column) + " of " + std::to_string(objective.size()));
      }
    }
  }
}

const char* to_string(LPStatus status) {
  switch (status) {
    case LPStatus::kOptimal:
      return "optimal";
    case LPStatus::kInfeasible:
      return "infeasible";
    case LPStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

using detail::BoundedSimplex;
using detail::ExactArithmetic;
using detail::FloatArithmetic;
using detail::Pricing;

struct BasisSnapshot {
  std::vector<std::size_t> basis;
  std::vector<detail::ColumnState> state;
};

/// Two-phase simplex on lp. With `warm`, phase I is skipped when that basis
/// is primal feasible; `final_basis` receives the optimal basis.
template <class Arith>
BasicLPSolution<typename Arith::Field> solve_primal(const LinearProgram& lp, Arith arith,
                                                    Pricing pricing, std::size_t cap,
                                                    const BasisSnapshot* warm = nullptr,
                                                    BasisSnapshot* final_basis = nullptr) {
  using Field = typename Arith::Field;
  auto form = detail::to_standard_form<Arith>(lp);
  const std::vector<std::size_t> artificials = form.artificials;
  const std::vector<Field> cost = form.cost;
  const std::vector<int> row_sign = form.row_sign;
  std::optional<BoundedSimplex<Arith>> warmed;
  if (warm) {
    warmed.emplace(form, arith, pricing, cap);
    bool ok = warmed->load_basis(warm->basis, warm->state);
    for (std::size_t a : artificials) ok = ok && arith.sign(warmed->values()[a]) == 0;
    if (!ok) warmed.reset();
  }
  const bool warm_ok = warmed.has_value();
  BoundedSimplex<Arith> simplex = warmed ? std::move(*warmed)
                                         : BoundedSimplex<Arith>(std::move(form), arith, pricing, cap);

  BasicLPSolution<Field> out;
  if (!artificials.empty() && !warm_ok) {
    std::vector<Field> phase_one(cost.size(), Field(0));
    for (std::size_t a : artificials) phase_one[a] = Field(1);
    simplex.run(phase_one);
    if (arith.sign(simplex.objective(phase_one)) > 0) {
      out.status = LPStatus::kInfeasible;
      out.iterations = simplex.iterations();
      return out;
    }
  }
  for (std::size_t a : artificials) simplex.fix_at_zero(a);
  const auto outcome = simplex.run(cost);
  out.iterations = simplex.iterations();
  if (outcome == BoundedSimplex<Arith>::Outcome::kUnbounded) {
    out.status = LPStatus::kUnbounded;
    return out;
  }
  if constexpr (!Arith::kExact) {
    simplex.refactor();
    simplex.recompute_duals(cost);
  }
  if (final_basis) {
    final_basis->basis = simplex.basis();
    final_basis->state.resize(cost.size());
    for (std::size_t j = 0; j < cost.size(); ++j) final_basis->state[j] = simplex.state(j);
  }

  out.status = LPStatus::kOptimal;
  const bool maximize = lp.sense == Objective::kMaximize;
  out.primal.assign(simplex.values().begin(), simplex.values().begin() + lp.num_columns());
  if constexpr (!Arith::kExact) {
    for (auto& x : out.primal) {
      if (x < 0.0 && x > -arith.tol) x = 0.0;
    }
  }
  out.dual.resize(lp.num_rows());
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    Field y = simplex.duals()[i];
    if ((row_sign[i] < 0) != maximize) y = -y;
    out.dual[i] = y;
  }
  out.reduced_costs.resize(lp.num_columns());
  for (std::size_t j = 0; j < lp.num_columns(); ++j) out.reduced_costs[j] = Arith::convert(lp.objective[j]);
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    for (const Term& t : lp.constraints[i].terms) {
      out.reduced_costs[t.column] -= out.dual[i] * Arith::convert(t.coefficient);
    }
  }
  out.objective = Field(0);
  for (std::size_t j = 0; j < lp.num_columns(); ++j) {
    out.objective += Arith::convert(lp.objective[j]) * out.primal[j];
  }
  return out;
}

/// Exact simplex started from the optimal basis of a floating-point solve of
/// the same program; a cold start is used when that basis is unusable.
LPSolution solve_primal_exact(const LinearProgram& lp) {
  constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();
  std::optional<BasisSnapshot> start;
  try {
    BasisSnapshot snapshot;
    const std::size_t cap = 50 * (lp.num_rows() + lp.num_columns() + 1);
    const auto f = solve_primal(lp, FloatArithmetic{}, Pricing::kPartialDantzig, cap, nullptr,
                                &snapshot);
    if (f.status == LPStatus::kOptimal) start = std::move(snapshot);
  } catch (const SolverError&) {
  }
  return solve_primal(lp, ExactArithmetic{}, Pricing::kBland, kNoCap, start ? &*start : nullptr);
}

template <class Arith>
BasicLPSolution<typename Arith::Field> solve_oriented(const LinearProgram& lp, Arith arith,
                                                      Pricing pricing, std::size_t cap) {
  if constexpr (Arith::kExact) {
    return solve_primal_exact(lp);
  } else {
    return solve_primal(lp, arith, pricing, cap);
  }
}

// Explicit dual of lp, written as  max b'.y  s.t.  A'^T y <= c',  y >= 0,
// where  min c'.x,  A'x (>= | =) b',  x >= 0  is lp with finite upper bounds
// turned into rows and every <= row negated. Equality rows get a second,
// negated column for the free part of their multiplier.
struct DualProgram {
  LinearProgram program;
  std::vector<int> row_sign;
  std::vector<std::size_t> plus_column;
  std::vector<std::optional<std::size_t>> minus_column;
};

DualProgram dualize(const LinearProgram& lp) {
  struct Row {
    std::vector<Term> terms;
    Rational rhs;
    bool equality;
    int sign;
  };
  std::vector<Row> rows;
  for (const Constraint& c : lp.constraints) {
    const int s = c.sense == RowSense::kLessEqual ? -1 : 1;
    Row row{{}, s > 0 ? c.rhs : Rational(-c.rhs), c.sense == RowSense::kEqual, s};
    for (const Term& t : c.terms) row.terms.push_back({t.column, s > 0 ? t.coefficient : Rational(-t.coefficient)});
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < lp.num_columns(); ++j) {
    if (lp.upper_bounds[j]) rows.push_back(Row{{{j, Rational(-1)}}, -*lp.upper_bounds[j], false, -1});
  }

  DualProgram dual;
  std::size_t columns = 0;
  for (const Row& row : rows) {
    dual.plus_column.push_back(columns++);
    dual.minus_column.push_back(row.equality ? std::optional<std::size_t>(columns++) : std::nullopt);
    dual.row_sign.push_back(row.sign);
  }
  dual.program = LinearProgram(Objective::kMaximize, columns);
  dual.program.upper_bounds.assign(columns, std::nullopt);
  std::vector<std::vector<Term>> dual_rows(lp.num_columns());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    dual.program.objective[dual.plus_column[i]] = rows[i].rhs;
    if (dual.minus_column[i]) dual.program.objective[*dual.minus_column[i]] = -rows[i].rhs;
    for (const Term& t : rows[i].terms) {
      dual_rows[t.column].push_back({dual.plus_column[i], t.coefficient});
      if (dual.minus_column[i]) dual_rows[t.column].push_back({*dual.minus_column[i], -t.coefficient});
    }
  }
  const bool maximize = lp.sense == Objective::kMaximize;
  for (std::size_t j = 0; j < lp.num_columns(); ++j) {
    Rational cost = maximize ? Rational(-lp.objective[j]) : lp.objective[j];
    dual.program.add_constraint(std::move(dual_rows[j]), RowSense::kLessEqual, cost);
  }
  return dual;
}

template <class Arith>
BasicLPSolution<typename Arith::Field> solve_via_dual(const LinearProgram& lp, Arith arith,
                                                      Pricing pricing, std::size_t cap) {
  using Field = typename Arith::Field;
  const DualProgram dual = dualize(lp);
  auto d = solve_oriented(dual.program, arith, pricing, cap);
  BasicLPSolution<Field> out;
  if (d.status == LPStatus::kUnbounded) {
    out.status = LPStatus::kInfeasible;
    out.iterations = d.iterations;
    return out;
  }
  if (d.status == LPStatus::kInfeasible) {
    // Dual infeasible leaves primal infeasible or unbounded; the primal
    // route tells them apart.
    out = solve_oriented(lp, arith, pricing, cap);
    out.iterations += d.iterations;
    return out;
  }
  out.status = LPStatus::kOptimal;
  out.iterations = d.iterations;
  out.primal.assign(d.dual.begin(), d.dual.begin() + lp.num_columns());
  const bool maximize = lp.sense == Objective::kMaximize;
  out.dual.resize(lp.num_rows());
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    Field y = d.primal[dual.plus_column[i]];
    if (dual.minus_column[i]) y -= d.primal[*dual.minus_column[i]];
    if ((dual.row_sign[i] < 0) != maximize) y = -y;
    out.dual[i] = y;
  }
  out.reduced_costs.resize(lp.num_columns());
  for (std::size_t j = 0; j < lp.num_columns(); ++j) out.reduced_costs[j] = Arith::convert(lp.objective[j]);
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    for (const Term& t : lp.constraints[i].terms) {
      out.reduced_costs[t.column] -= out.dual[i] * Arith::convert(t.coefficient);
    }
  }
  out.objective = Field(0);
  for (std::size_t j = 0; j < lp.num_columns(); ++j) {
    out.objective += Arith::convert(lp.objective[j]) * out.primal[j];
  }
  return out;
}

bool use_dual(const LinearProgram& lp, Orientation orientation) {
  switch (orientation) {
    case Orientation::kPrimal:
      return false;
    case Orientation::kDual:
      return true;
    case Orientation::kAuto:
      return lp.num_rows() > lp.num_columns();
  }
  return false;
}

}  // namespace

LPSolution solve_exact(const LinearProgram& lp, const SolveOptions& options) {
  lp.validate();
  constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();
  if (use_dual(lp, options.orientation)) {
    return solve_via_dual(lp, ExactArithmetic{}, Pricing::kBland, kNoCap);
  }
  return solve_primal_exact(lp);
}

FloatLPSolution solve_float(const LinearProgram& lp, double tol, const SolveOptions& options) {
  lp.validate();
  if (!(tol > 0.0)) throw InputError("solve_float tolerance must be positive");
  FloatArithmetic arith{tol};
  const bool dual = use_dual(lp, options.orientation);
  // Cap on the program actually handed to the simplex.
  std::size_t rows = lp.num_rows();
  std::size_t cols = lp.num_columns();
  if (dual) {
    std::size_t bounded = 0;
    for (const auto& u : lp.upper_bounds) bounded += u ? 1 : 0;
    rows = lp.num_columns();
    cols = lp.num_rows() + bounded;
  }
  const std::size_t cap = 50 * (rows + cols);
  if (dual) return solve_via_dual(lp, arith, Pricing::kPartialDantzig, cap);
  return solve_primal(lp, arith, Pricing::kPartialDantzig, cap);
}

Rational probe_optimal_face(const LinearProgram& lp, const Rational& optimum,
                            std::size_t coordinate, ProbeSense sense) {
  if (coordinate >= lp.num_columns()) {
    throw InputError("probe coordinate " + std::to_string(coordinate) + " out of range");
  }
  const Term direction{coordinate, Rational(1)};
  return probe_optimal_face(lp, optimum, std::span<const Term>(&direction, 1), sense);
}

Rational probe_optimal_face(const LinearProgram& lp, const Rational& optimum,
                            std::span<const Term> direction, ProbeSense sense) {
  LinearProgram face = lp;
  std::vector<Term> pinned;
  for (std::size_t j = 0; j < lp.num_columns(); ++j) {
    if (sgn(lp.objective[j]) != 0) pinned.push_back({j, lp.objective[j]});
  }
  face.add_constraint(std::move(pinned), RowSense::kEqual, optimum);
  face.sense = sense == ProbeSense::kMaximize ? Objective::kMaximize : Objective::kMinimize;
  face.objective.assign(lp.num_columns(), Rational(0));
  for (const Term& t : direction) {
    if (t.column >= lp.num_columns()) throw InputError("probe direction column out of range");
    face.objective[t.column] += t.coefficient;
  }
  const LPSolution solution = solve_exact(face);
  if (solution.status == LPStatus::kInfeasible) {
    throw InputError("optimal face is empty: value " + to_string(optimum) +
                     " is not attainable by the program");
  }
  if (solution.status == LPStatus::kUnbounded) {
    throw InputError("probe direction is unbounded over the optimal face");
  }
  return solution.objective;
}

CertificateReport verify_certificate(const LinearProgram& lp, const LPSolution& s) {
  CertificateReport report;
  if (s.status != LPStatus::kOptimal || s.primal.size() != lp.num_columns() ||
      s.dual.size() != lp.num_rows() || s.reduced_costs.size() != lp.num_columns()) {
    return report;
  }
  const bool maximize = lp.sense == Objective::kMaximize;

  report.primal_feasible = true;
  report.complementary_slackness = true;
  report.dual_feasible = true;
  for (std::size_t j = 0; j < lp.num_columns(); ++j) {
    const Rational& x = s.primal[j];
    if (sgn(x) < 0 || (lp.upper_bounds[j] && x > *lp.upper_bounds[j])) report.primal_feasible = false;
  }
  std::vector<Rational> reduced = lp.objective;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const Constraint& row = lp.constraints[i];
    Rational activity = 0;
    for (const Term& t : row.terms) {
      activity += t.coefficient * s.primal[t.column];
      reduced[t.column] -= s.dual[i] * t.coefficient;
    }
    const int slack = sgn(Rational(activity - row.rhs));
    if ((row.sense == RowSense::kLessEqual && slack > 0) ||
        (row.sense == RowSense::kGreaterEqual && slack < 0) ||
        (row.sense == RowSense::kEqual && slack != 0)) {
      report.primal_feasible = false;
    }
    if (slack != 0 && sgn(s.dual[i]) != 0) report.complementary_slackness = false;
    // For a maximization, <= rows carry nonnegative multipliers.
    const int y = sgn(s.dual[i]) * (maximize ? 1 : -1);
    if ((row.sense == RowSense::kLessEqual && y < 0) ||
        (row.sense == RowSense::kGreaterEqual && y > 0)) {
      report.dual_feasible = false;
    }
  }
  Rational bound_term = 0;
  for (std::size_t j = 0; j < lp.num_columns(); ++j) {
    if (reduced[j] != s.reduced_costs[j]) report.dual_feasible = false;
    // "Raising" direction: positive reduced cost improves a maximization.
    const int d = sgn(reduced[j]) * (maximize ? 1 : -1);
    if (d > 0) {
      if (!lp.upper_bounds[j]) {
        report.dual_feasible = false;
      } else {
        if (s.primal[j] != *lp.upper_bounds[j]) report.complementary_slackness = false;
        bound_term += *lp.upper_bounds[j] * reduced[j];
      }
    } else if (d < 0 && sgn(s.primal[j]) != 0) {
      report.complementary_slackness = false;
    }
  }
  Rational primal_value = 0;
  for (std::size_t j = 0; j < lp.num_columns(); ++j) primal_value += lp.objective[j] * s.primal[j];
  Rational dual_value = bound_term;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) dual_value += lp.constraints[i].rhs * s.dual[i];
  report.strong_duality = primal_value == dual_value && primal_value == s.objective;
  return report;
}

}  // namespace kout
