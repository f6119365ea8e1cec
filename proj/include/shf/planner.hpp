#pragma once

// Optimal hover-and-fly planning: the best trajectory for one window
// [x_I, x_F] is the max-speed sweep merged with the window's optimal hover
// schedule; the global optimum is found by searching windows on a grid.

#include <optional>

#include "shf/dual_solver.hpp"

namespace shf {

struct PlannerConfig {
  double d_min = 0.25;   // window grid resolution, m
  double gap_tol = 1e-4;
  unsigned workers = 1;  // rows of the window grid solved concurrently
  bool warm_start = true;
  /// Coarse-to-fine refinement around the best coarse window.
  bool refine = true;
  double refine_radius = 0.5;
  double refine_step = 0.01;
  double tie_tolerance = 1e-9;
  double pool_tie_tolerance = 1e-6;

  void validate() const;
  P2Options p2_options() const;
};

struct GridStats {
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // infeasible windows
  std::size_t failed = 0;   // solver failures, recorded and skipped
  std::size_t gap_warnings = 0;
  double worst_gap = 0.0;
  std::size_t max_hover_points = 0;
  std::size_t weak_duality_violations = 0;
};

struct P11Solution {
  Window window;
  Trajectory trajectory;
  EnergyVector energies;
  double min_energy = 0.0;
  P2Solution p2;
};

/// Optimal trajectory restricted to [x_I, x_F]; nullopt when the sweep alone
/// exceeds the mission time.
std::optional<P11Solution> solve_p11(Window window, const SystemParams& params,
                                     const Topology& topo,
                                     const PlannerConfig& config = {});

struct SolveReport {
  Window best_window;
  Trajectory trajectory;
  HoverSchedule schedule;
  EnergyVector energies;
  double min_energy = 0.0;
  DualCertificate certificate;
  double upper_bound = 0.0;
  GridStats grid_stats;
};

/// Exhaustive window search (plus optional refinement) returning the best
/// hover-and-fly trajectory. Ties keep the smallest x_I, then x_F.
SolveReport solve_p1(const SystemParams& params, const Topology& topo,
                     const PlannerConfig& config = {});

/// Speed-free relaxation: all of T is hover time anywhere in [w_1, w_K].
P2Solution solve_speed_free(const SystemParams& params, const Topology& topo,
                            const PlannerConfig& config = {});

/// Best dual value of the speed-free relaxation, an upper bound on the
/// optimum of every window.
double speed_free_upper_bound(const SystemParams& params, const Topology& topo,
                              const PlannerConfig& config = {});

/// Grid {lo, lo + step, ...} capped by hi, which is always included.
std::vector<double> window_axis(double lo, double hi, double step);

/// Upper bound on how much the optimum can move when the window grid is
/// refined from d to d/2: 2 T beta0 P d / H^3 (twice the power Lipschitz
/// constant bound times the mission time).
double grid_sensitivity_bound(const SystemParams& params, double d);

}  // namespace shf
