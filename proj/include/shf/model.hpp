#pragma once

// Physical model of a UAV charging a line of ground nodes from a fixed
// altitude: free-space received power and its closed-form integrals along
// hover and constant-speed cruise segments.

#include <functional>
#include <span>
#include <vector>

#include "shf/error.hpp"

namespace shf {

/// Physical constants of one charging mission, all in linear SI units.
struct SystemParams {
  double beta0 = 1e-3;     // channel power gain at 1 m
  double power = 10.0;     // transmit power, W
  double altitude = 5.0;   // H, m
  double max_speed = 1.0;  // V, m/s
  double duration = 20.0;  // T, s

  /// Throws Error(kInvalidArgument) unless every field is finite and positive.
  void validate() const;

  /// beta0 * power, the numerator shared by every power expression.
  double gain() const { return beta0 * power; }
};

/// Node positions along the line, sorted non-decreasing.
class Topology {
 public:
  /// Rejects empty, non-finite or unsorted input.
  explicit Topology(std::vector<double> positions);

  /// Sorts first; for callers drawing positions in arbitrary order.
  static Topology from_unsorted(std::vector<double> positions);

  std::span<const double> positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  double operator[](std::size_t k) const { return positions_[k]; }
  double front() const { return positions_.front(); }
  double back() const { return positions_.back(); }

 private:
  std::vector<double> positions_;
};

/// Per-node received energy in joules, indexed like the topology.
using EnergyVector = std::vector<double>;

double db_to_linear(double db);
double dbm_to_watts(double dbm);

/// beta0 * P / ((uav_x - node_x)^2 + H^2).
double received_power(const SystemParams& params, double node_x, double uav_x);

/// d/dx of received_power with respect to the UAV position.
double received_power_slope(const SystemParams& params, double node_x,
                            double uav_x);

/// Energy received while cruising from a to b (a <= b) at a constant speed.
/// Closed form: (beta0 P / (v H)) [atan((b - w)/H) - atan((a - w)/H)].
/// The speed is not checked against max_speed here; the trajectory layer
/// decides which segments must respect it.
double cruise_energy(const SystemParams& params, double node_x, double a,
                     double b, double speed);

/// Energy received while hovering at hover_x for tau seconds.
double hover_energy(const SystemParams& params, double node_x, double hover_x,
                    double tau);

/// Energy of a straight move from x0 to x1 lasting `seconds`, in either
/// direction. A zero-length move is a hover.
double move_energy(const SystemParams& params, double node_x, double x0,
                   double x1, double seconds);

/// Largest |dQ/dx| over all offsets: beta0 P (3 sqrt(3) / 8) / H^3.
double power_lipschitz(const SystemParams& params);

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int max_depth = 50);

}  // namespace shf
