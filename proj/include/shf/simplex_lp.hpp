#pragma once

// Dense two-phase tableau simplex with Bland's rule for the small linear
// programs that allocate hover time. Sized for tens of variables and a
// handful of rows; no sparsity, no presolve.

#include <vector>

namespace shf {

/// maximize c'x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
struct LpProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

LpResult solve_lp(const LpProblem& lp, double eps = 1e-11,
                  int max_pivots = 50000);

}  // namespace shf
