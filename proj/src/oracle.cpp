#include "shf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace shf {
namespace {

constexpr double kMaxCells = 1e8;

long long near_integer(double v, const char* what) {
  const double r = std::round(v);
  if (!(r >= 1.0) || std::abs(v - r) > 1e-9 * std::max(1.0, r)) {
    throw_invalid(std::string(what) + " must be a positive integer");
  }
  return static_cast<long long>(r);
}

}  // namespace

GridSpec GridSpec::covering(const Topology& topo, double dx, double dt) {
  if (!(dx > 0.0)) throw_invalid("grid dx must be positive");
  GridSpec g;
  g.dx = dx;
  g.dt = dt;
  // Cell midpoints at w_1 + i dx, so nodes on that lattice are midpoints.
  const double n = std::ceil((topo.back() - topo.front()) / dx - 1e-9);
  g.lo = topo.front() - 0.5 * dx;
  g.hi = g.lo + (n + 1.0) * dx;
  return g;
}

void GridSpec::validate(const SystemParams& params, const Topology& topo) const {
  if (!(dx > 0.0) || !(dt > 0.0)) throw_invalid("grid steps must be positive");
  near_integer(params.max_speed * dt / dx, "V dt / dx");
  near_integer((hi - lo) / dx, "grid span / dx");
  near_integer(params.duration / dt, "T / dt");
  if (lo > topo.front() || hi < topo.back()) {
    throw_invalid("grid span must cover every node");
  }
}

std::size_t GridSpec::cells() const {
  return static_cast<std::size_t>(std::round((hi - lo) / dx));
}

std::size_t GridSpec::steps(const SystemParams& params) const {
  return static_cast<std::size_t>(std::round(params.duration / dt));
}

int GridSpec::reach(const SystemParams& params) const {
  return static_cast<int>(std::round(params.max_speed * dt / dx));
}

double dp_slack(const SystemParams& params, const GridSpec& grid) {
  return params.duration * power_lipschitz(params) *
         (params.max_speed * grid.dt + grid.dx) / 2.0;
}

DpResult dp_weighted_max(const SystemParams& params, const Topology& topo,
                         const SimplexWeights& lambda, const GridSpec& grid,
                         bool want_path) {
  params.validate();
  grid.validate(params, topo);
  if (lambda.size() != topo.size()) {
    throw_invalid("weights and topology differ in length");
  }
  const std::size_t n = grid.cells();
  const std::size_t m = grid.steps(params);
  if (static_cast<double>(n) * static_cast<double>(m) > kMaxCells) {
    throw_invalid("DP grid exceeds 1e8 cells");
  }
  const int r = grid.reach(params);
  if (want_path && r > 127) throw_invalid("path recovery needs V dt / dx <= 127");

  std::vector<double> mid(n), reward(n);
  for (std::size_t i = 0; i < n; ++i) {
    mid[i] = grid.lo + (static_cast<double>(i) + 0.5) * grid.dx;
    reward[i] = weighted_power(params, topo, lambda.values(), mid[i]) * grid.dt;
  }

  // value[i] after processing step s = best reward of steps s..m-1 from cell i.
  std::vector<double> value = reward, next(n);
  std::vector<signed char> choice;
  if (want_path) choice.assign(n * (m > 0 ? m - 1 : 0), 0);
  std::deque<std::size_t> window;
  for (std::size_t s = m - 1; s-- > 0;) {
    // Sliding maximum of value over [i - r, i + r].
    window.clear();
    std::size_t pushed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t want = std::min(n, i + static_cast<std::size_t>(r) + 1);
      for (; pushed < want; ++pushed) {
        while (!window.empty() && value[window.back()] <= value[pushed]) {
          window.pop_back();
        }
        window.push_back(pushed);
      }
      while (window.front() + static_cast<std::size_t>(r) < i) window.pop_front();
      const std::size_t j = window.front();
      next[i] = reward[i] + value[j];
      if (want_path) {
        choice[s * n + i] = static_cast<signed char>(
            static_cast<long long>(j) - static_cast<long long>(i));
      }
    }
    value.swap(next);
  }

  DpResult out;
  const auto best = std::max_element(value.begin(), value.end());
  out.value = *best;
  out.slack = dp_slack(params, grid);
  if (want_path) {
    std::size_t i = static_cast<std::size_t>(best - value.begin());
    out.path.reserve(m);
    for (std::size_t s = 0; s < m; ++s) {
      out.path.push_back(mid[i]);
      if (s + 1 < m) {
        i = static_cast<std::size_t>(static_cast<long long>(i) + choice[s * n + i]);
      }
    }
  }
  return out;
}

MultistartResult multistart_lower_bound(const SystemParams& params,
                                        const Topology& topo, double dt,
                                        std::size_t restarts,
                                        std::uint64_t seed,
                                        const ScaOptions& opts) {
  if (restarts < 1) throw_invalid("multistart needs at least one restart");
  MultistartResult out;
  out.best = -INFINITY;
  for (std::size_t i = 0; i < restarts; ++i) {
    Rng rng(mix_seed(seed, i));
    const QuantizedTrajectory init =
        random_feasible_trajectory(params, topo, dt, rng);
    ScaResult r = sca_refine(params, topo, init, opts);
    out.values.push_back(r.min_energy);
    if (r.min_energy > out.best) {
      out.best = r.min_energy;
      out.best_restart = i;
      out.trajectory = std::move(r.trajectory);
    }
  }
  return out;
}

}  // namespace shf
