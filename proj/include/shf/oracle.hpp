#pragma once

// Independent bounds on the optimal min-energy of small instances.
//
// Upper bound: for simplex weights lambda, min_k E_k <= sum_k lambda_k E_k,
// and the weighted sum is maximized over all grid paths by dynamic
// programming. Adding a discretization slack makes it hold for every
// continuous speed-feasible trajectory.
//
// Lower bound: the best exact energy of SCA runs from random feasible
// starts. Any feasible trajectory bounds the optimum from below.

#include <cstdint>
#include <vector>

#include "shf/baselines.hpp"

namespace shf {

/// Position cells [lo + i dx, lo + (i + 1) dx) and time steps of length dt.
/// A step may move at most V dt / dx cells, which must be a positive
/// integer, and the span must hold an integer number of cells.
struct GridSpec {
  double dx = 0.05;
  double dt = 0.05;
  double lo = 0.0;
  double hi = 0.0;

  /// Cells centred on w_1 + i dx for i = 0..n, n the smallest count
  /// reaching w_K.
  static GridSpec covering(const Topology& topo, double dx, double dt);

  void validate(const SystemParams& params, const Topology& topo) const;
  std::size_t cells() const;
  std::size_t steps(const SystemParams& params) const;
  int reach(const SystemParams& params) const;  // V dt / dx
};

struct DpResult {
  double value = 0.0;  // max over grid paths of sum_n F(cell_n) dt
  double slack = 0.0;  // dp_slack for the grid
  std::vector<double> path;  // cell midpoints per step, if requested
};

/// Certified slack: T L (V dt + dx) / 2 with L the power Lipschitz constant.
/// Every feasible trajectory stays within (V dt + dx) / 2 of the midpoint of
/// the cell containing its floor-snapped slot-midpoint position, and the
/// snapped sequence is itself a grid path.
double dp_slack(const SystemParams& params, const GridSpec& grid);

/// Throws Error(kInvalidArgument) beyond 1e8 cells (positions x steps).
DpResult dp_weighted_max(const SystemParams& params, const Topology& topo,
                         const SimplexWeights& lambda, const GridSpec& grid,
                         bool want_path = false);

/// Restart i starts from random_feasible_trajectory drawn with
/// Rng(mix_seed(seed, i)).
struct MultistartResult {
  double best = 0.0;  // best exact min-energy
  std::size_t best_restart = 0;
  std::vector<double> values;  // per restart
  QuantizedTrajectory trajectory;
};

MultistartResult multistart_lower_bound(const SystemParams& params,
                                        const Topology& topo, double dt,
                                        std::size_t restarts,
                                        std::uint64_t seed,
                                        const ScaOptions& opts = {});

}  // namespace shf
