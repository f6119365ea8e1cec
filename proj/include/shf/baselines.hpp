#pragma once

// Reference designs to compare the optimal planner against: the heuristic
// hover-and-fly trajectory built from the speed-free relaxation, and
// successive convex approximation over a time-quantized trajectory.

#include <cstdint>
#include <vector>

#include "shf/planner.hpp"
#include "shf/random.hpp"

namespace shf {

/// One position per time slot of length dt; slot n covers
/// [n dt, (n + 1) dt) and positions[n] is where the UAV is at its midpoint.
struct QuantizedTrajectory {
  double dt = 0.0;
  std::vector<double> positions;

  double duration() const { return dt * static_cast<double>(positions.size()); }

  /// Throws unless every step satisfies |x[n+1] - x[n]| <= V dt + 1e-12.
  void validate(const SystemParams& params) const;
};

/// Slot count round(T / dt_hint), at least one; the effective slot length is
/// T divided by that count.
std::size_t slot_count(const SystemParams& params, double dt_hint);

/// Samples a continuous trajectory at slot midpoints.
QuantizedTrajectory quantize(const Trajectory& traj,
                             const SystemParams& params, double dt_hint);

/// Rectangle rule: E_k = sum_n Q_k(x_n) dt.
EnergyVector quantized_energy(const QuantizedTrajectory& q,
                              const Topology& topo,
                              const SystemParams& params);

/// Physical realization: piecewise linear between slot midpoints, constant
/// over the first and last half slot. Speed-feasible whenever q is.
TraceRows realization_knots(const QuantizedTrajectory& q);

/// Exact energies of the realization.
EnergyVector realized_energy(const QuantizedTrajectory& q,
                             const Topology& topo,
                             const SystemParams& params);

/// Random start in [w_1, w_K] followed by piecewise constant random
/// velocities in [-V, V], clamped to [w_1, w_K].
QuantizedTrajectory random_feasible_trajectory(const SystemParams& params,
                                               const Topology& topo,
                                               double dt_hint, Rng& rng);

struct HeuristicResult {
  Trajectory trajectory;
  EnergyVector energies;
  double min_energy = 0.0;
  bool truncated = false;  // flight alone exceeded T
};

HeuristicResult heuristic_shf(const SystemParams& params, const Topology& topo,
                              const PlannerConfig& config = {});

struct ScaOptions {
  int max_iterations = 200;
  double rel_tol = 1e-8;
  int inner_iterations = 40;
  /// Inner step size a / (b + r) along the normalized subgradient, with a
  /// scaled by sqrt(M) V dt.
  double step_a = 1.0;
  double step_b = 4.0;
  int projection_sweeps = 30;
  /// Check surrogate <= true power at random slots every iteration.
  bool check_bounds = true;
  int bound_checks = 100;
  std::uint64_t check_seed = 1;
};

struct ScaResult {
  QuantizedTrajectory trajectory;
  EnergyVector energies;            // exact, of the realization
  double min_energy = 0.0;
  EnergyVector quantized_energies;  // rectangle rule
  double quantized_value = 0.0;
  std::vector<double> history;      // quantized objective, initial first
  int iterations = 0;
};

/// SCA ascent from a feasible start. Never returns worse than the start in
/// the quantized objective; throws kSolverFailure if monotonicity or bound
/// validity is violated.
ScaResult sca_refine(const SystemParams& params, const Topology& topo,
                     const QuantizedTrajectory& init,
                     const ScaOptions& opts = {});

/// SCA baseline warm-started from a continuous trajectory (normally the
/// heuristic one): refines its dt-sample and keeps whichever of the refined
/// realization and the starting trajectory has the larger exact min-energy.
struct ScaBaseline {
  ScaResult refined;
  bool kept_initial = false;
  EnergyVector energies;
  double min_energy = 0.0;
  TraceRows knots;  // piecewise-linear path of the reported trajectory
};

ScaBaseline sca_baseline(const SystemParams& params, const Topology& topo,
                         const Trajectory& init, double dt_hint,
                         const ScaOptions& opts = {});

}  // namespace shf
