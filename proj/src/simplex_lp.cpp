#include "shf/simplex_lp.hpp"

#include <cmath>
#include <limits>

#include "shf/error.hpp"

namespace shf {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const {
    return data_[i * (cols_ + 1) + j];
  }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double& obj(std::size_t j) { return at(rows_, j); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class Outcome { kOptimal, kUnbounded, kLimit };

// Maximizes the objective encoded in the last tableau row, where obj(j) is
// the reduced cost with the sign convention "negative means improving".
// Columns at or beyond `allowed` never enter.
Outcome run_simplex(Tableau& t, std::vector<std::size_t>& basis,
                    std::size_t allowed, double eps, int& pivots,
                    int max_pivots) {
  for (;;) {
    std::size_t enter = allowed;
    for (std::size_t j = 0; j < allowed; ++j) {
      if (t.obj(j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter == allowed) return Outcome::kOptimal;

    std::size_t leave = t.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= eps) continue;
      const double ratio = t.rhs(i) / a;
      if (ratio < best_ratio - eps ||
          (std::abs(ratio - best_ratio) <= eps && leave < t.rows() &&
           basis[i] < basis[leave])) {
        best_ratio = std::min(ratio, best_ratio);
        leave = i;
      }
    }
    if (leave == t.rows()) return Outcome::kUnbounded;
    if (++pivots > max_pivots) return Outcome::kLimit;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
}

}  // namespace

LpResult solve_lp(const LpProblem& lp, double eps, int max_pivots) {
  const std::size_t n = lp.objective.size();
  const std::size_t m_ub = lp.a_ub.size();
  const std::size_t m_eq = lp.a_eq.size();
  const std::size_t m = m_ub + m_eq;
  if (lp.b_ub.size() != m_ub || lp.b_eq.size() != m_eq) {
    throw_invalid("LP right-hand sides do not match the constraint rows");
  }
  for (const auto& row : lp.a_ub) {
    if (row.size() != n) throw_invalid("LP row width differs from objective");
  }
  for (const auto& row : lp.a_eq) {
    if (row.size() != n) throw_invalid("LP row width differs from objective");
  }

  // Columns: originals, one slack per inequality row, one artificial per
  // row that has no usable slack (negative rhs or equality).
  std::vector<bool> needs_artificial(m, false);
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double b = i < m_ub ? lp.b_ub[i] : lp.b_eq[i - m_ub];
    needs_artificial[i] = i >= m_ub || b < 0.0;
    if (needs_artificial[i]) ++n_art;
  }
  const std::size_t slack0 = n;
  const std::size_t art0 = n + m_ub;
  const std::size_t cols = art0 + n_art;

  Tableau t(m, cols);
  std::vector<std::size_t> basis(m);
  std::size_t next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool ub = i < m_ub;
    const auto& row = ub ? lp.a_ub[i] : lp.a_eq[i - m_ub];
    const double b = ub ? lp.b_ub[i] : lp.b_eq[i - m_ub];
    const double sign = b < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign * row[j];
    if (ub) t.at(i, slack0 + i) = sign;
    t.rhs(i) = sign * b;
    if (needs_artificial[i]) {
      t.at(i, next_art) = 1.0;
      basis[i] = next_art++;
    } else {
      basis[i] = slack0 + i;
    }
  }

  LpResult result;
  int pivots = 0;

  if (n_art > 0) {
    // Phase 1: maximize -sum(artificials).
    for (std::size_t j = 0; j <= cols; ++j) t.obj(j) = 0.0;
    for (std::size_t a = art0; a < cols; ++a) t.obj(a) = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t.obj(j) -= t.at(i, j);
    }
    const auto out = run_simplex(t, basis, cols, eps, pivots, max_pivots);
    if (out == Outcome::kLimit) {
      result.status = LpStatus::kIterationLimit;
      return result;
    }
    // The phase-1 objective row's rhs is -(sum of artificials).
    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(t.rhs(i)));
    if (-t.obj(cols) > eps * scale * 10.0) {
      result.status = LpStatus::kInfeasible;
      result.pivots = pivots;
      return result;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art0) continue;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(t.at(i, j)) > eps) {
          t.pivot(i, j);
          basis[i] = j;
          break;
        }
      }
      // A row with no eligible column is redundant; its artificial stays
      // basic at zero and can never enter again in phase 2.
    }
  }

  // Phase 2 objective row: reduced costs for the original objective.
  for (std::size_t j = 0; j <= cols; ++j) {
    t.obj(j) = j < n ? -lp.objective[j] : 0.0;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bj = basis[i];
    const double cb = bj < n ? lp.objective[bj] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= cols; ++j) t.obj(j) += cb * t.at(i, j);
  }
  const auto out = run_simplex(t, basis, art0, eps, pivots, max_pivots);
  result.pivots = pivots;
  if (out == Outcome::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  if (out == Outcome::kLimit) {
    result.status = LpStatus::kIterationLimit;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] = std::max(0.0, t.rhs(i));
  }
  result.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    result.objective += lp.objective[j] * result.x[j];
  }
  return result;
}

}  // namespace shf
