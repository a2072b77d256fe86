#pragma once

// Bounded-variable revised simplex shared by the exact and floating-point
// solvers. Internal to kout_core.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kout/errors.hpp"
#include "kout/lp.hpp"

namespace kout::detail {

struct ExactArithmetic {
  using Field = Rational;
  static constexpr bool kExact = true;

  int sign(const Rational& x) const { return sgn(x); }
  static Rational convert(const Rational& x) { return x; }
};

struct FloatArithmetic {
  using Field = double;
  static constexpr bool kExact = false;

  double tol = 1e-9;

  int sign(double x) const { return x > tol ? 1 : (x < -tol ? -1 : 0); }
  static double convert(const Rational& x) { return x.get_d(); }
};

enum class Pricing { kBland, kPartialDantzig };

template <class Field>
using SparseColumn = std::vector<std::pair<std::size_t, Field>>;

/// min cost . x  s.t.  A x = rhs (rhs >= 0),  0 <= x <= upper.
/// Columns: structural, then one slack per inequality row, then one
/// artificial per row that has no slack usable as an initial basic variable.
template <class Arith>
struct StandardForm {
  using Field = typename Arith::Field;

  std::size_t rows = 0;
  std::size_t structural = 0;
  std::vector<SparseColumn<Field>> columns;
  std::vector<std::optional<Field>> upper;
  std::vector<Field> rhs;
  std::vector<Field> cost;
  std::vector<int> row_sign;
  std::vector<std::size_t> initial_basis;
  std::vector<std::size_t> artificials;
};

template <class Arith>
StandardForm<Arith> to_standard_form(const LinearProgram& lp) {
  using Field = typename Arith::Field;
  StandardForm<Arith> form;
  form.rows = lp.num_rows();
  form.structural = lp.num_columns();
  form.columns.resize(form.structural);
  form.upper.resize(form.structural);
  form.cost.resize(form.structural);
  form.rhs.resize(form.rows);
  form.row_sign.resize(form.rows, 1);
  form.initial_basis.resize(form.rows);

  const bool maximize = lp.sense == Objective::kMaximize;
  for (std::size_t j = 0; j < form.structural; ++j) {
    form.cost[j] = Arith::convert(maximize ? Rational(-lp.objective[j]) : lp.objective[j]);
    if (lp.upper_bounds[j]) form.upper[j] = Arith::convert(*lp.upper_bounds[j]);
  }

  std::vector<RowSense> senses(form.rows);
  for (std::size_t i = 0; i < form.rows; ++i) {
    const Constraint& row = lp.constraints[i];
    RowSense sense = row.sense;
    int s = 1;
    if (sgn(row.rhs) < 0) {
      s = -1;
      if (sense == RowSense::kLessEqual) {
        sense = RowSense::kGreaterEqual;
      } else if (sense == RowSense::kGreaterEqual) {
        sense = RowSense::kLessEqual;
      }
    }
    form.row_sign[i] = s;
    senses[i] = sense;
    form.rhs[i] = Arith::convert(s > 0 ? row.rhs : Rational(-row.rhs));
    // Merge repeated column entries within a row.
    std::vector<std::pair<std::size_t, Rational>> merged;
    for (const Term& t : row.terms) merged.emplace_back(t.column, t.coefficient);
    std::sort(merged.begin(), merged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < merged.size();) {
      std::size_t col = merged[k].first;
      Rational sum = 0;
      for (; k < merged.size() && merged[k].first == col; ++k) sum += merged[k].second;
      if (sgn(sum) == 0) continue;
      form.columns[col].emplace_back(i, Arith::convert(s > 0 ? sum : Rational(-sum)));
    }
  }

  auto add_column = [&](std::size_t row, Field coefficient, std::optional<Field> upper) {
    form.columns.push_back({{row, coefficient}});
    form.upper.push_back(upper);
    form.cost.push_back(Field(0));
    return form.columns.size() - 1;
  };

  std::vector<std::optional<std::size_t>> slack(form.rows);
  for (std::size_t i = 0; i < form.rows; ++i) {
    if (senses[i] == RowSense::kLessEqual) {
      slack[i] = add_column(i, Field(1), std::nullopt);
    } else if (senses[i] == RowSense::kGreaterEqual) {
      slack[i] = add_column(i, Field(-1), std::nullopt);
    }
  }
  for (std::size_t i = 0; i < form.rows; ++i) {
    if (senses[i] == RowSense::kLessEqual) {
      form.initial_basis[i] = *slack[i];
    } else {
      std::size_t a = add_column(i, Field(1), std::nullopt);
      form.artificials.push_back(a);
      form.initial_basis[i] = a;
    }
  }
  return form;
}

enum class ColumnState : std::uint8_t { kBasic, kAtLower, kAtUpper };

/// Revised simplex over an explicit dense basis inverse. The basis starts as
/// the identity formed by form.initial_basis.
template <class Arith>
class BoundedSimplex {
 public:
  using Field = typename Arith::Field;
  enum class Outcome { kOptimal, kUnbounded };

  BoundedSimplex(StandardForm<Arith> form, Arith arith, Pricing pricing,
                 std::size_t iteration_cap)
      : form_(std::move(form)),
        arith_(arith),
        pricing_(pricing),
        iteration_cap_(iteration_cap),
        rows_(form_.rows),
        cols_(form_.columns.size()) {
    basis_ = form_.initial_basis;
    state_.assign(cols_, ColumnState::kAtLower);
    value_.assign(cols_, Field(0));
    binv_.assign(rows_, std::vector<Field>(rows_, Field(0)));
    for (std::size_t i = 0; i < rows_; ++i) {
      binv_[i][i] = Field(1);
      state_[basis_[i]] = ColumnState::kBasic;
      value_[basis_[i]] = form_.rhs[i];
    }
  }

  const StandardForm<Arith>& form() const { return form_; }
  std::size_t iterations() const { return iterations_; }
  const std::vector<Field>& values() const { return value_; }
  const std::vector<Field>& duals() const { return y_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  ColumnState state(std::size_t j) const { return state_[j]; }

  /// Replaces the starting basis. Returns false, leaving the solver unusable,
  /// when the basis is singular or its basic solution violates a bound.
  bool load_basis(const std::vector<std::size_t>& basis, const std::vector<ColumnState>& state) {
    if (basis.size() != rows_ || state.size() != cols_) return false;
    basis_ = basis;
    state_ = state;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (state_[j] == ColumnState::kAtUpper && !form_.upper[j]) return false;
      value_[j] = state_[j] == ColumnState::kAtUpper ? *form_.upper[j] : Field(0);
    }
    try {
      refactor();
    } catch (const SolverError&) {
      return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      const Field& v = value_[basis_[i]];
      if (arith_.sign(v) < 0) return false;
      if (form_.upper[basis_[i]] && arith_.sign(Field(*form_.upper[basis_[i]] - v)) < 0) return false;
    }
    return true;
  }

  /// Fixes column j at its current value of zero (upper bound 0).
  void fix_at_zero(std::size_t j) { form_.upper[j] = Field(0); }

  Field objective(const std::vector<Field>& cost) const {
    Field total(0);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (arith_.sign(cost[j]) != 0 && !is_zero(value_[j])) total += cost[j] * value_[j];
    }
    return total;
  }

  Field reduced_cost(const std::vector<Field>& cost, std::size_t j) const {
    Field d = cost[j];
    for (const auto& [row, a] : form_.columns[j]) {
      if (!is_zero(y_[row])) d -= y_[row] * a;
    }
    return d;
  }

  Outcome run(const std::vector<Field>& cost) {
    recompute_duals(cost);
    std::size_t since_refactor = 0;
    std::size_t degenerate_streak = 0;
    for (;;) {
      if (iterations_ >= iteration_cap_) {
        throw SolverError("simplex iteration cap " + std::to_string(iteration_cap_) +
                          " exceeded (rows=" + std::to_string(rows_) +
                          ", columns=" + std::to_string(cols_) + ")");
      }
      const bool use_bland = pricing_ == Pricing::kBland || degenerate_streak > kDegenerateLimit;
      auto entering = use_bland ? price_bland(cost) : price_partial(cost);
      if (!entering) return Outcome::kOptimal;
      const std::size_t q = entering->first;
      const Field d_q = entering->second;
      // +1: entering rises from its lower bound; -1: it falls from its upper bound.
      const int dir = state_[q] == ColumnState::kAtLower ? 1 : -1;

      std::vector<Field> alpha = ftran(q);

      // Ratio test. Ties keep the bound flip, then the smallest column index.
      std::optional<Field> theta;
      std::optional<std::size_t> leave_row;
      bool leave_to_upper = false;
      if (form_.upper[q]) theta = *form_.upper[q];
      for (std::size_t i = 0; i < rows_; ++i) {
        const int s = arith_.sign(alpha[i]) * dir;
        if (s == 0) continue;
        const std::size_t b = basis_[i];
        Field limit;
        bool to_upper;
        if (s > 0) {
          limit = clamp_nonnegative(value_[b]) / (dir > 0 ? alpha[i] : Field(-alpha[i]));
          to_upper = false;
        } else {
          if (!form_.upper[b]) continue;
          limit = clamp_nonnegative(Field(*form_.upper[b] - value_[b])) /
                  (dir > 0 ? Field(-alpha[i]) : alpha[i]);
          to_upper = true;
        }
        const bool better =
            !theta || limit < *theta ||
            (limit == *theta && leave_row && basis_[i] < basis_[*leave_row]);
        if (better) {
          theta = limit;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      if (!theta) return Outcome::kUnbounded;
      // A bound flip is taken whenever it is no longer than the best ratio.
      if (form_.upper[q] && !(*theta < *form_.upper[q])) leave_row.reset();

      ++iterations_;
      const Field step = *theta;
      degenerate_streak = arith_.sign(step) == 0 ? degenerate_streak + 1 : 0;
      if (arith_.sign(step) != 0) {
        for (std::size_t i = 0; i < rows_; ++i) {
          if (is_zero(alpha[i])) continue;
          if (dir > 0) {
            value_[basis_[i]] -= step * alpha[i];
          } else {
            value_[basis_[i]] += step * alpha[i];
          }
        }
        value_[q] += dir > 0 ? step : Field(-step);
      }

      if (!leave_row) {
        state_[q] = dir > 0 ? ColumnState::kAtUpper : ColumnState::kAtLower;
        value_[q] = dir > 0 ? *form_.upper[q] : Field(0);
        continue;
      }

      const std::size_t p = *leave_row;
      const std::size_t leaving = basis_[p];
      state_[leaving] = leave_to_upper ? ColumnState::kAtUpper : ColumnState::kAtLower;
      value_[leaving] = leave_to_upper ? *form_.upper[leaving] : Field(0);
      pivot(p, alpha);
      // y' = y + (d_q / alpha_p) * (row p of the previous inverse), and the
      // new row p equals the old row divided by alpha_p.
      for (std::size_t k = 0; k < rows_; ++k) {
        if (!is_zero(binv_[p][k])) y_[k] += d_q * binv_[p][k];
      }
      basis_[p] = q;
      state_[q] = ColumnState::kBasic;

      if constexpr (!Arith::kExact) {
        if (++since_refactor >= kRefactorInterval) {
          refactor();
          recompute_duals(cost);
          since_refactor = 0;
        }
      }
    }
  }

  /// Rebuilds the inverse from the basis columns and recomputes basic values.
  void refactor() {
    std::vector<std::vector<Field>> b(rows_, std::vector<Field>(rows_, Field(0)));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (const auto& [row, a] : form_.columns[basis_[i]]) b[row][i] = a;
    }
    binv_ = invert(std::move(b));
    std::vector<Field> residual = form_.rhs;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (state_[j] != ColumnState::kAtUpper) continue;
      for (const auto& [row, a] : form_.columns[j]) residual[row] -= a * *form_.upper[j];
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      Field v(0);
      for (std::size_t k = 0; k < rows_; ++k) {
        if (!is_zero(binv_[i][k]) && !is_zero(residual[k])) v += binv_[i][k] * residual[k];
      }
      value_[basis_[i]] = v;
    }
  }

  void recompute_duals(const std::vector<Field>& cost) {
    y_.assign(rows_, Field(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      const Field& c = cost[basis_[i]];
      if (is_zero(c)) continue;
      for (std::size_t k = 0; k < rows_; ++k) {
        if (!is_zero(binv_[i][k])) y_[k] += c * binv_[i][k];
      }
    }
  }

 private:
  static constexpr std::size_t kDegenerateLimit = 50;
  static constexpr std::size_t kRefactorInterval = 64;

  Field clamp_nonnegative(Field v) const {
    if constexpr (Arith::kExact) {
      return v;
    } else {
      return v < 0 ? 0.0 : v;
    }
  }

  bool eligible(std::size_t j) const {
    if (state_[j] == ColumnState::kBasic) return false;
    return !(form_.upper[j] && arith_.sign(*form_.upper[j]) == 0);
  }

  bool improving(std::size_t j, const Field& d) const {
    const int s = arith_.sign(d);
    return (state_[j] == ColumnState::kAtLower && s < 0) ||
           (state_[j] == ColumnState::kAtUpper && s > 0);
  }

  std::optional<std::pair<std::size_t, Field>> price_bland(const std::vector<Field>& cost) const {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!eligible(j)) continue;
      Field d = reduced_cost(cost, j);
      if (improving(j, d)) return std::make_pair(j, d);
    }
    return std::nullopt;
  }

  // Dantzig pricing over rotating segments of the column range.
  std::optional<std::pair<std::size_t, Field>> price_partial(const std::vector<Field>& cost) {
    const std::size_t segment = std::max<std::size_t>(64, cols_ / 8);
    std::size_t scanned = 0;
    while (scanned < cols_) {
      std::optional<std::pair<std::size_t, Field>> best;
      for (std::size_t k = 0; k < segment && scanned < cols_; ++k, ++scanned) {
        const std::size_t j = price_cursor_;
        price_cursor_ = (price_cursor_ + 1) % cols_;
        if (!eligible(j)) continue;
        Field d = reduced_cost(cost, j);
        if (!improving(j, d)) continue;
        if (!best || magnitude(d) > magnitude(best->second)) best = std::make_pair(j, d);
      }
      if (best) return best;
    }
    return std::nullopt;
  }

  static bool is_zero(const Field& x) {
    if constexpr (Arith::kExact) {
      return sgn(x) == 0;
    } else {
      return x == 0.0;
    }
  }

  static Field magnitude(const Field& x) { return x < Field(0) ? Field(-x) : x; }

  std::vector<Field> ftran(std::size_t q) const {
    std::vector<Field> alpha(rows_, Field(0));
    for (const auto& [row, a] : form_.columns[q]) {
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!is_zero(binv_[i][row])) alpha[i] += binv_[i][row] * a;
      }
    }
    return alpha;
  }

  void pivot(std::size_t p, const std::vector<Field>& alpha) {
    const Field inv = Field(1) / alpha[p];
    std::vector<std::size_t> nonzero;
    for (std::size_t k = 0; k < rows_; ++k) {
      if (!is_zero(binv_[p][k])) {
        binv_[p][k] *= inv;
        nonzero.push_back(k);
      }
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == p || is_zero(alpha[i])) continue;
      const Field factor = alpha[i];
      for (std::size_t k : nonzero) binv_[i][k] -= factor * binv_[p][k];
    }
  }

  std::vector<std::vector<Field>> invert(std::vector<std::vector<Field>> b) const {
    const std::size_t m = rows_;
    std::vector<std::vector<Field>> inv(m, std::vector<Field>(m, Field(0)));
    for (std::size_t i = 0; i < m; ++i) inv[i][i] = Field(1);
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t best = c;
      for (std::size_t r = c + 1; r < m; ++r) {
        if (magnitude(b[r][c]) > magnitude(b[best][c])) best = r;
      }
      if (is_zero(b[best][c])) throw SolverError("singular basis during refactorization");
      std::swap(b[best], b[c]);
      std::swap(inv[best], inv[c]);
      const Field pivot_inv = Field(1) / b[c][c];
      for (std::size_t k = 0; k < m; ++k) {
        b[c][k] *= pivot_inv;
        inv[c][k] *= pivot_inv;
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (r == c || is_zero(b[r][c])) continue;
        const Field f = b[r][c];
        for (std::size_t k = 0; k < m; ++k) {
          b[r][k] -= f * b[c][k];
          inv[r][k] -= f * inv[c][k];
        }
      }
    }
    return inv;
  }

  StandardForm<Arith> form_;
  Arith arith_;
  Pricing pricing_;
  std::size_t iteration_cap_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> basis_;
  std::vector<ColumnState> state_;
  std::vector<Field> value_;
  std::vector<std::vector<Field>> binv_;
  std::vector<Field> y_;
  std::size_t iterations_ = 0;
  std::size_t price_cursor_ = 0;
};

}  // namespace kout::detail
