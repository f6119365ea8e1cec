#pragma once

// Helpers shared by the unit tests and the acceptance binary. Everything
// here is deliberately naive: independent reference computations that the
// production code is checked against.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "shf/model.hpp"
#include "shf/random.hpp"
#include "shf/trajectory.hpp"
#include "shf/weighted_objective.hpp"

namespace shf::testing {

inline SystemParams default_params() {
  SystemParams p;
  p.beta0 = db_to_linear(-30.0);
  p.power = dbm_to_watts(40.0);
  p.altitude = 5.0;
  p.max_speed = 1.0;
  p.duration = 20.0;
  return p;
}

inline Topology random_topology(Rng& rng, std::size_t k, double d) {
  std::vector<double> w(k);
  for (double& x : w) x = rng.uniform(0.0, d);
  return Topology::from_unsorted(std::move(w));
}

/// Unidirectional, speed-feasible trajectory with random hovers and random
/// cruise speeds in (0, V], some exactly V, lasting about `duration`.
inline Trajectory random_unidirectional(Rng& rng, const SystemParams& p,
                                        double x0, double span) {
  Trajectory t;
  double x = x0;
  const int pieces = 2 + static_cast<int>(rng.below(8));
  for (int i = 0; i < pieces; ++i) {
    const double r = rng.uniform();
    if (r < 0.35) {
      t.push_back(Hover{x, rng.uniform(0.0, 3.0)});
    } else {
      const double len = rng.uniform(0.0, span / pieces);
      double v = p.max_speed * rng.uniform(0.05, 1.0);
      if (r > 0.8) v = p.max_speed;
      t.push_back(Cruise{x, x + len, v});
      x += len;
    }
  }
  return t;
}

/// max of F on a uniform grid with the given step, endpoints included.
inline double dense_grid_max(const SystemParams& p, const Topology& topo,
                             std::span<const double> lambda, Window w,
                             double step) {
  const auto n = static_cast<long long>(std::ceil(w.length() / step));
  double best = weighted_power(p, topo, lambda, w.hi);
  for (long long i = 0; i < n; ++i) {
    best = std::max(best, weighted_power(p, topo, lambda, w.lo + i * step));
  }
  return best;
}

inline std::vector<double> random_simplex(Rng& rng, std::size_t k) {
  std::vector<double> l(k);
  double s = 0.0;
  for (double& v : l) {
    v = -std::log(1.0 - rng.uniform());
    s += v;
  }
  for (double& v : l) v /= s;
  return l;
}

}  // namespace shf::testing
