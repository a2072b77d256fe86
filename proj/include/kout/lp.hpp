#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kout/rational.hpp"

namespace kout {

enum class Objective { kMaximize, kMinimize };
enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  std::size_t column;
  Rational coefficient;
};

struct Constraint {
  std::vector<Term> terms;
  RowSense sense;
  Rational rhs;
};

/// optimize objective . x  subject to  constraints,  0 <= x_j <= upper_j.
///
/// Variable bounds are handled implicitly by the solver and never become
/// explicit rows. A column with no upper bound (nullopt) is unbounded above.
struct LinearProgram {
  LinearProgram() = default;
  /// All columns start with objective 0 and bounds [0, 1].
  LinearProgram(Objective sense, std::size_t num_columns);

  Objective sense = Objective::kMaximize;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  std::vector<std::optional<Rational>> upper_bounds;

  std::size_t num_columns() const { return objective.size(); }
  std::size_t num_rows() const { return constraints.size(); }
  std::size_t add_constraint(std::vector<Term> terms, RowSense sense, Rational rhs);
  /// Throws InputError on inconsistent dimensions or negative upper bounds.
  void validate() const;
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };
const char* to_string(LPStatus status);

/// Solution of a LinearProgram.
///
/// Duals follow the convention reduced_cost_j = c_j - sum_i dual_i * a_ij on
/// the original rows, so that at optimality
///   objective = sum_i rhs_i * dual_i + sum_{j at upper bound} upper_j * reduced_cost_j.
/// primal, dual and reduced_costs are empty unless status is kOptimal.
template <class Scalar>
struct BasicLPSolution {
  LPStatus status = LPStatus::kInfeasible;
  std::vector<Scalar> primal;
  std::vector<Scalar> dual;
  std::vector<Scalar> reduced_costs;
  Scalar objective{};
  std::size_t iterations = 0;
};

using LPSolution = BasicLPSolution<Rational>;
using FloatLPSolution = BasicLPSolution<double>;

/// kAuto solves the explicit dual program when the LP has more rows than
/// columns, so the basis dimension is min(rows, columns).
enum class Orientation { kAuto, kPrimal, kDual };

struct SolveOptions {
  Orientation orientation = Orientation::kAuto;
};

/// Exact rational bounded simplex with Bland's rule. Terminates on every
/// well-formed LP; infeasibility and unboundedness are reported in status.
/// The exact run starts from the optimal basis of a floating-point solve when
/// that basis is feasible, and from the slack basis otherwise.
LPSolution solve_exact(const LinearProgram& lp, const SolveOptions& options = {});

/// Floating-point bounded revised simplex with partial pricing. Throws
/// SolverError when the iteration cap 50 * (rows + columns) is exceeded.
FloatLPSolution solve_float(const LinearProgram& lp, double tol = 1e-9,
                            const SolveOptions& options = {});

enum class ProbeSense { kMinimize, kMaximize };

/// Extreme value of x[coordinate] over the optimal face
/// {x feasible : objective . x = optimum}. Throws InputError when the face
/// is empty (optimum inconsistent with lp) or the probe is unbounded.
Rational probe_optimal_face(const LinearProgram& lp, const Rational& optimum,
                            std::size_t coordinate, ProbeSense sense);

/// Same as above for the linear functional direction . x.
Rational probe_optimal_face(const LinearProgram& lp, const Rational& optimum,
                            std::span<const Term> direction, ProbeSense sense);

struct CertificateReport {
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool complementary_slackness = false;
  bool strong_duality = false;

  bool ok() const {
    return primal_feasible && dual_feasible && complementary_slackness && strong_duality;
  }
};

/// Exact check of an optimal solution's primal/dual certificate.
CertificateReport verify_certificate(const LinearProgram& lp, const LPSolution& solution);

}  // namespace kout
