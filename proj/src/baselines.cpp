#include "shf/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shf {
namespace {

// Per-slot linearization data for one anchor trajectory: for node k and
// slot n, Q_k(x) >= a - b ((x - w_k)^2 - u) with u the anchor's squared
// offset. Stored node-major.
struct Surrogate {
  std::size_t k = 0, m = 0;
  std::vector<double> a, b, u;
};

Surrogate linearize(const SystemParams& params, const Topology& topo,
                    const std::vector<double>& z) {
  Surrogate s;
  s.k = topo.size();
  s.m = z.size();
  s.a.resize(s.k * s.m);
  s.b.resize(s.k * s.m);
  s.u.resize(s.k * s.m);
  const double h2 = params.altitude * params.altitude;
  const double c = params.gain();
  for (std::size_t k = 0; k < s.k; ++k) {
    for (std::size_t n = 0; n < s.m; ++n) {
      const double d = z[n] - topo[k];
      const double u = d * d;
      const double den = u + h2;
      s.a[k * s.m + n] = c / den;
      s.b[k * s.m + n] = c / (den * den);
      s.u[k * s.m + n] = u;
    }
  }
  return s;
}

double surrogate_node(const Surrogate& s, const Topology& topo,
                      const std::vector<double>& x, std::size_t k, double dt) {
  double sum = 0.0;
  const std::size_t off = k * s.m;
  for (std::size_t n = 0; n < s.m; ++n) {
    const double d = x[n] - topo[k];
    sum += s.a[off + n] - s.b[off + n] * (d * d - s.u[off + n]);
  }
  return sum * dt;
}

std::pair<double, std::size_t> surrogate_min(const Surrogate& s,
                                             const Topology& topo,
                                             const std::vector<double>& x,
                                             double dt) {
  double best = INFINITY;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < s.k; ++k) {
    const double v = surrogate_node(s, topo, x, k, dt);
    if (v < best) {
      best = v;
      arg = k;
    }
  }
  return {best, arg};
}

double quantized_min(const SystemParams& params, const Topology& topo,
                     const std::vector<double>& x, double dt) {
  double best = INFINITY;
  for (std::size_t k = 0; k < topo.size(); ++k) {
    double sum = 0.0;
    for (double xn : x) sum += received_power(params, topo[k], xn);
    best = std::min(best, sum * dt);
  }
  return best;
}

void project_pair(double& a, double& b, double c) {
  const double d = b - a;
  if (d > c || d < -c) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (d > 0.0 ? c : -c);
    a = mid - half;
    b = mid + half;
  }
}

// Approximate Euclidean projection onto {|x[n+1] - x[n]| <= c} by Dykstra's
// method over the even and odd pair families, then a forward clamp that
// guarantees feasibility whatever the sweep count.
void project_speed(std::vector<double>& x, double c, double lo, double hi,
                   int sweeps) {
  const std::size_t m = x.size();
  if (m < 2) {
    for (double& v : x) v = std::clamp(v, lo, hi);
    return;
  }
  std::vector<double> p(m, 0.0), q(m, 0.0), y(m);
  for (int s = 0; s < sweeps; ++s) {
    double worst = 0.0;
    for (std::size_t n = 0; n + 1 < m; ++n) {
      worst = std::max(worst, std::abs(x[n + 1] - x[n]) - c);
    }
    if (worst <= 1e-12 * std::max(1.0, c)) break;
    for (std::size_t n = 0; n < m; ++n) y[n] = x[n] + p[n];
    for (std::size_t n = 0; n + 1 < m; n += 2) project_pair(y[n], y[n + 1], c);
    for (std::size_t n = 0; n < m; ++n) {
      p[n] = x[n] + p[n] - y[n];
      x[n] = y[n] + q[n];
    }
    std::vector<double>& z = y;
    for (std::size_t n = 0; n < m; ++n) z[n] = x[n];
    for (std::size_t n = 1; n + 1 < m; n += 2) project_pair(z[n], z[n + 1], c);
    for (std::size_t n = 0; n < m; ++n) {
      q[n] = x[n] - z[n];
      x[n] = z[n];
    }
  }
  for (double& v : x) v = std::clamp(v, lo, hi);
  for (std::size_t n = 0; n + 1 < m; ++n) {
    x[n + 1] = std::clamp(x[n + 1], x[n] - c, x[n] + c);
  }
}

}  // namespace

void QuantizedTrajectory::validate(const SystemParams& params) const {
  if (!(dt > 0.0)) throw_invalid("quantized trajectory needs dt > 0");
  if (positions.empty()) throw_invalid("quantized trajectory is empty");
  const double c = params.max_speed * dt + 1e-12;
  for (std::size_t n = 0; n + 1 < positions.size(); ++n) {
    if (std::abs(positions[n + 1] - positions[n]) > c) {
      throw_invalid("slot " + std::to_string(n) + " exceeds the speed limit");
    }
  }
}

std::size_t slot_count(const SystemParams& params, double dt_hint) {
  if (!(dt_hint > 0.0)) throw_invalid("slot length must be positive");
  const double m = std::round(params.duration / dt_hint);
  return static_cast<std::size_t>(std::max(1.0, m));
}

QuantizedTrajectory quantize(const Trajectory& traj,
                             const SystemParams& params, double dt_hint) {
  const std::size_t m = slot_count(params, dt_hint);
  QuantizedTrajectory q;
  q.dt = params.duration / static_cast<double>(m);
  q.positions.resize(m);
  const double total = traj.duration();
  for (std::size_t n = 0; n < m; ++n) {
    const double t = (static_cast<double>(n) + 0.5) * q.dt;
    q.positions[n] = traj.position_at(std::min(t, total));
  }
  return q;
}

EnergyVector quantized_energy(const QuantizedTrajectory& q,
                              const Topology& topo,
                              const SystemParams& params) {
  EnergyVector e(topo.size(), 0.0);
  for (std::size_t k = 0; k < topo.size(); ++k) {
    double sum = 0.0;
    for (double x : q.positions) sum += received_power(params, topo[k], x);
    e[k] = sum * q.dt;
  }
  return e;
}

TraceRows realization_knots(const QuantizedTrajectory& q) {
  TraceRows knots;
  const std::size_t m = q.positions.size();
  knots.reserve(m + 2);
  knots.emplace_back(0.0, q.positions.front());
  for (std::size_t n = 0; n < m; ++n) {
    knots.emplace_back((static_cast<double>(n) + 0.5) * q.dt, q.positions[n]);
  }
  knots.emplace_back(q.duration(), q.positions.back());
  return knots;
}

EnergyVector realized_energy(const QuantizedTrajectory& q,
                             const Topology& topo,
                             const SystemParams& params) {
  const TraceRows knots = realization_knots(q);
  EnergyVector e(topo.size(), 0.0);
  for (std::size_t k = 0; k < topo.size(); ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double secs = knots[i + 1].first - knots[i].first;
      sum += move_energy(params, topo[k], knots[i].second, knots[i + 1].second,
                         secs);
    }
    e[k] = sum;
  }
  return e;
}

QuantizedTrajectory random_feasible_trajectory(const SystemParams& params,
                                               const Topology& topo,
                                               double dt_hint, Rng& rng) {
  const std::size_t m = slot_count(params, dt_hint);
  QuantizedTrajectory q;
  q.dt = params.duration / static_cast<double>(m);
  q.positions.resize(m);
  const double lo = topo.front();
  const double hi = topo.back();
  const double step = params.max_speed * q.dt;
  const std::uint64_t max_block = std::max<std::uint64_t>(1, m / 8);
  double x = rng.uniform(lo, hi);
  double v = 0.0;
  std::uint64_t left = 0;
  for (std::size_t n = 0; n < m; ++n) {
    if (n > 0) {
      if (left == 0) {
        v = rng.uniform(-1.0, 1.0);
        left = 1 + rng.below(max_block);
      }
      --left;
      x = std::clamp(x + v * step, lo, hi);
    }
    q.positions[n] = x;
  }
  return q;
}

HeuristicResult heuristic_shf(const SystemParams& params, const Topology& topo,
                              const PlannerConfig& config) {
  params.validate();
  const P2Solution relaxed = solve_speed_free(params, topo, config);
  const auto& pts = relaxed.schedule.points;
  HeuristicResult out;
  const double first = pts.front();
  const double last = pts.back();
  const double flight = (last - first) / params.max_speed;
  if (flight <= params.duration) {
    HoverSchedule s;
    s.points = pts;
    s.x_i = first;
    s.x_f = last;
    const double scale = (params.duration - flight) / params.duration;
    for (double tau : relaxed.schedule.durations) s.durations.push_back(tau * scale);
    out.trajectory = assemble_shf(s, params);
  } else {
    out.truncated = true;
    out.trajectory.push_back(Cruise{
        first, first + params.max_speed * params.duration, params.max_speed});
  }
  out.energies = energy_vector(out.trajectory, topo, params);
  out.min_energy = *std::min_element(out.energies.begin(), out.energies.end());
  return out;
}

ScaResult sca_refine(const SystemParams& params, const Topology& topo,
                     const QuantizedTrajectory& init, const ScaOptions& opts) {
  params.validate();
  init.validate(params);
  const double dt = init.dt;
  const std::size_t m = init.positions.size();
  const double c = params.max_speed * dt;
  const double lo = topo.front();
  const double hi = topo.back();
  const double a = opts.step_a * std::sqrt(static_cast<double>(m)) * c;
  Rng check_rng(opts.check_seed);

  std::vector<double> z = init.positions;
  for (double& v : z) v = std::clamp(v, lo, hi);
  project_speed(z, c, lo, hi, 0);
  double value = quantized_min(params, topo, z, dt);

  ScaResult out;
  out.history.push_back(value);
  std::vector<double> x(m), grad(m);
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    const Surrogate s = linearize(params, topo, z);
    std::vector<double> best = z;
    double best_s = surrogate_min(s, topo, z, dt).first;
    x = z;
    for (int r = 0; r < opts.inner_iterations; ++r) {
      const std::size_t k = surrogate_min(s, topo, x, dt).second;
      double norm2 = 0.0;
      for (std::size_t n = 0; n < m; ++n) {
        grad[n] = -2.0 * dt * s.b[k * m + n] * (x[n] - topo[k]);
        norm2 += grad[n] * grad[n];
      }
      if (norm2 == 0.0) break;
      const double step = a / ((opts.step_b + r) * std::sqrt(norm2));
      for (std::size_t n = 0; n < m; ++n) x[n] += step * grad[n];
      project_speed(x, c, lo, hi, opts.projection_sweeps);
      const double sv = surrogate_min(s, topo, x, dt).first;
      if (sv > best_s) {
        best_s = sv;
        best = x;
      }
    }

    if (opts.check_bounds) {
      for (int i = 0; i < opts.bound_checks; ++i) {
        const std::size_t n = check_rng.below(m);
        for (std::size_t k = 0; k < topo.size(); ++k) {
          const double d = best[n] - topo[k];
          const double lin = s.a[k * m + n] - s.b[k * m + n] * (d * d - s.u[k * m + n]);
          const double q = received_power(params, topo[k], best[n]);
          if (lin > q * (1.0 + 1e-12)) {
            throw Error(ErrorCode::kSolverFailure,
                        "SCA surrogate exceeds the true power at slot " +
                            std::to_string(n));
          }
        }
      }
    }

    const double next = quantized_min(params, topo, best, dt);
    if (next < value * (1.0 - 1e-12)) {
      throw Error(ErrorCode::kSolverFailure, "SCA objective decreased");
    }
    const double gain = next - value;
    if (next > value) {
      z = std::move(best);
      value = next;
    }
    out.history.push_back(value);
    if (gain <= opts.rel_tol * std::abs(value)) {
      ++iter;
      break;
    }
  }

  out.iterations = iter;
  out.trajectory = QuantizedTrajectory{dt, std::move(z)};
  out.quantized_energies = quantized_energy(out.trajectory, topo, params);
  out.quantized_value = value;
  out.energies = realized_energy(out.trajectory, topo, params);
  out.min_energy = *std::min_element(out.energies.begin(), out.energies.end());
  return out;
}

ScaBaseline sca_baseline(const SystemParams& params, const Topology& topo,
                         const Trajectory& init, double dt_hint,
                         const ScaOptions& opts) {
  ScaBaseline out;
  out.refined = sca_refine(params, topo, quantize(init, params, dt_hint), opts);
  const EnergyVector start = energy_vector(init, topo, params);
  const double start_min = *std::min_element(start.begin(), start.end());
  if (start_min > out.refined.min_energy) {
    out.kept_initial = true;
    out.energies = start;
    out.min_energy = start_min;
    out.knots = trajectory_knots(init);
  } else {
    out.energies = out.refined.energies;
    out.min_energy = out.refined.min_energy;
    out.knots = realization_knots(out.refined.trajectory);
  }
  return out;
}

}  // namespace shf
