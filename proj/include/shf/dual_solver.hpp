#pragma once

// Exact solution of the speed-free hover problem on a fixed window:
//
//   maximize E  s.t.  Ebar_k + sum_i tau_i Q_k(x_i) >= E  for all k,
//                     sum_i tau_i = hover_budget,  x_i in [x_I, x_F].
//
// The dual function f(lambda) = sum_k lambda_k Ebar_k + budget * max_x F(x)
// is convex on the simplex and minimized with a deep-cut ellipsoid method in
// the reduced (K-1)-dimensional space. Hover points are recovered from the
// maximizers seen at the last iterates and timed by a small LP.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shf/trajectory.hpp"
#include "shf/weighted_objective.hpp"

namespace shf {

struct P2Instance {
  SystemParams params;
  Topology topo;
  Window window;
  double hover_budget = 0.0;  // T - (x_F - x_I) / V, seconds
  EnergyVector sweep_energy;  // max-speed sweep energy over the window

  /// Builds the instance for window [x_i, x_f]. Throws Error(kInfeasible)
  /// when the sweep alone takes longer than the mission.
  static P2Instance for_window(const SystemParams& params,
                               const Topology& topo, Window window);

  /// Speed constraint removed: all of T is hover time anywhere in
  /// [w_1, w_K], and there is no sweep energy.
  static P2Instance speed_free(const SystemParams& params,
                               const Topology& topo);
};

struct DualCertificate {
  std::vector<double> lambda_star;
  double dual_value = 0.0;
  double primal_value = 0.0;
  double gap = 0.0;  // (dual - primal) / max(dual, tiny)
};

struct DualEvaluation {
  double value = 0.0;
  std::vector<double> subgradient;  // full K-vector
  MaximizerSet maximizers;
};

/// f(lambda) with a subgradient taken at the first maximizer of F.
DualEvaluation dual_value(const P2Instance& inst,
                          std::span<const double> lambda);

struct DualOptions {
  int max_iterations = 10000;
  double radius_tol = 1e-10;
  double stall_rel_tol = 1e-10;
  /// Stop when the best value moved less than stall_rel_tol over this many
  /// iterations, scaled by n (n + 1) / 2 in the reduced dimension n.
  int stall_window = 50;
  double tie_tolerance = 1e-9;
  /// Widened tie tolerance used when pooling candidate hover points.
  double pool_tie_tolerance = 1e-6;
  /// Number of most recent evaluated iterates whose maximizers are pooled.
  int pool_iterates = 50;
  /// Stop once the pooled primal certifies this relative gap (0 disables).
  double gap_stop = 1e-6;
  int gap_check_every = 25;
  /// Starting point for the ellipsoid center (a previous lambda*).
  std::optional<std::vector<double>> warm_start;
  bool record_log = false;
};

struct IterateLog {
  int iter = 0;
  double dual_value = 0.0;    // f at this iterate's center (NaN if cut)
  double best_dual = 0.0;     // best f so far
  double primal_value = 0.0;  // last recovered primal (NaN before any)
  double gap = 0.0;
};

struct DualRun {
  std::vector<double> lambda;  // best iterate, full K-vector
  double best_value = 0.0;
  int iterations = 0;
  std::string stop_reason;
  std::vector<double> pool;  // pooled candidate hover points, ascending
  std::vector<IterateLog> log;
  /// Iterates whose dual value fell below a primal value found in the same
  /// run (weak duality says this never happens beyond rounding).
  int weak_duality_violations = 0;
};

/// Thrown when the iteration cap is hit; carries the best iterate.
class DualFailure : public Error {
 public:
  DualFailure(const std::string& what, DualRun best)
      : Error(ErrorCode::kSolverFailure, what), best_(std::move(best)) {}
  const DualRun& best() const { return best_; }

 private:
  DualRun best_;
};

DualRun solve_dual(const P2Instance& inst, const DualOptions& opts = {});

struct TimeSharing {
  HoverSchedule schedule;
  double value = 0.0;  // min_k (Ebar_k + sum_i tau_i Q_k(x_i))
};

/// Optimal split of the hover budget over fixed candidate points. Throws
/// on an empty candidate list with a positive budget.
TimeSharing time_sharing_lp(const P2Instance& inst,
                            std::span<const double> candidates);

struct P2Solution {
  HoverSchedule schedule;
  EnergyVector energies;  // sweep energy included
  double min_energy = 0.0;
  DualCertificate certificate;
  int iterations = 0;
  bool gap_warning = false;
  int weak_duality_violations = 0;
  std::vector<IterateLog> log;
};

struct P2Options {
  DualOptions dual;
  double gap_tol = 1e-4;
};

P2Solution solve_p2(const P2Instance& inst, const P2Options& opts = {});

/// Comma-separated iterate log: iter,dual_value,primal_value,gap.
void write_iterate_log(std::ostream& out, const std::vector<IterateLog>& log);

}  // namespace shf
