#pragma once

// Piecewise hover/cruise trajectories on a line, their exact per-node
// energies, and the split of a speed-limited trajectory into a max-speed
// sweep plus a speed-free remainder.

#include <iosfwd>
#include <utility>
#include <variant>
#include <vector>

#include "shf/model.hpp"

namespace shf {

struct Hover {
  double x = 0.0;
  double tau = 0.0;
};

/// Unidirectional constant-speed flight, x_start <= x_end.
struct Cruise {
  double x_start = 0.0;
  double x_end = 0.0;
  double speed = 0.0;

  double seconds() const { return (x_end - x_start) / speed; }
};

using Segment = std::variant<Hover, Cruise>;

double segment_start(const Segment& s);
double segment_end(const Segment& s);
double segment_seconds(const Segment& s);

/// An ordered list of segments. Construction does not enforce physical
/// feasibility: speed-free trajectories reuse this type with cruise speeds
/// above V and gaps between segments. Use validate() for physical ones.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<Segment> segments)
      : segments_(std::move(segments)) {}

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  void push_back(Segment s) { segments_.push_back(s); }
  void append(const Trajectory& other);

  double start() const;
  double end() const;
  double duration() const;
  std::size_t hover_count() const;

  /// Position at time t in [0, duration()]; requires a continuous trajectory.
  double position_at(double t) const;

  /// Throws unless the trajectory is position-continuous, unidirectional,
  /// and every cruise has 0 < speed <= V (with relative slack `tol`).
  void validate(const SystemParams& params, double tol = 1e-12) const;

  /// True when every cruise runs at V (within tol) and the rest are hovers.
  bool is_shf(const SystemParams& params, double tol = 1e-9) const;

 private:
  std::vector<Segment> segments_;
};

/// Hover points with durations inside a window [x_i, x_f].
struct HoverSchedule {
  std::vector<double> points;
  std::vector<double> durations;
  double x_i = 0.0;
  double x_f = 0.0;

  double total_duration() const;

  /// Sorts by position, merges points closer than merge_tol (summing their
  /// durations) and drops zero-duration points.
  void canonicalize(double merge_tol = 1e-9);
};

EnergyVector energy_vector(const Trajectory& traj, const Topology& topo,
                           const SystemParams& params);

/// Max-speed sweep plus speed-free remainder with identical total energies.
struct Decomposition {
  Trajectory max_speed;
  Trajectory speed_free;
};

/// Splits a unidirectional, speed-feasible trajectory. Hovers go to the
/// speed-free part, max-speed cruises to the sweep, and a cruise at v < V
/// becomes a V pass plus a residual pass at V v / (V - v).
Decomposition decompose(const Trajectory& traj, const SystemParams& params);

/// Hover-and-fly trajectory: start at x_i, fly at V, stop at each schedule
/// point for its duration, finish at x_f. The schedule must fill the mission
/// time exactly (within 1e-9 s).
Trajectory assemble_shf(const HoverSchedule& schedule,
                        const SystemParams& params);

/// (t, x) rows sampled every dt plus every segment boundary.
using TraceRows = std::vector<std::pair<double, double>>;

TraceRows sample_trace(const Trajectory& traj, double dt = 0.01);

/// Same sampling for a piecewise-linear path given by its (t, x) knots.
TraceRows sample_polyline(const TraceRows& knots, double dt = 0.01);

/// Knot list of a continuous trajectory (segment boundaries).
TraceRows trajectory_knots(const Trajectory& traj);
void write_trace_csv(std::ostream& out, const TraceRows& rows);

}  // namespace shf
