#include "shf/planner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace shf {
namespace {

struct Row {
  double x_i;
  std::vector<double> x_f;
};

struct Best {
  bool have = false;
  Window window;
  double value = -INFINITY;
  P2Solution solution;
};

struct RowOutcome {
  Best best;
  GridStats stats;
};

bool improves(double value, Window w, const Best& b) {
  if (!b.have) return true;
  if (value != b.value) return value > b.value;
  return w.lo < b.window.lo || (w.lo == b.window.lo && w.hi < b.window.hi);
}

void merge_stats(GridStats& into, const GridStats& from) {
  into.evaluated += from.evaluated;
  into.skipped += from.skipped;
  into.failed += from.failed;
  into.gap_warnings += from.gap_warnings;
  into.worst_gap = std::max(into.worst_gap, from.worst_gap);
  into.max_hover_points = std::max(into.max_hover_points, from.max_hover_points);
  into.weak_duality_violations += from.weak_duality_violations;
}

bool window_fits(Window w, const SystemParams& params) {
  return w.length() / params.max_speed <= params.duration * (1.0 + 1e-12);
}

// Solves one row left to right, warm-starting each window from the
// previous window's lambda*. Rows never share state, so the result does not
// depend on how rows are distributed over workers.
RowOutcome solve_row(const Row& row, const SystemParams& params,
                     const Topology& topo, const PlannerConfig& config,
                     const std::optional<std::vector<double>>& seed_lambda) {
  RowOutcome out;
  P2Options opts = config.p2_options();
  std::optional<std::vector<double>> warm = seed_lambda;
  for (double x_f : row.x_f) {
    const Window w{row.x_i, x_f};
    if (x_f < row.x_i) continue;
    if (!window_fits(w, params)) {
      ++out.stats.skipped;
      continue;
    }
    try {
      const P2Instance inst = P2Instance::for_window(params, topo, w);
      if (config.warm_start) opts.dual.warm_start = warm;
      P2Solution sol = solve_p2(inst, opts);
      ++out.stats.evaluated;
      out.stats.worst_gap = std::max(out.stats.worst_gap, sol.certificate.gap);
      if (sol.gap_warning) ++out.stats.gap_warnings;
      out.stats.weak_duality_violations +=
          static_cast<std::size_t>(sol.weak_duality_violations);
      out.stats.max_hover_points =
          std::max(out.stats.max_hover_points, sol.schedule.points.size());
      warm = sol.certificate.lambda_star;
      if (improves(sol.min_energy, w, out.best)) {
        out.best.have = true;
        out.best.window = w;
        out.best.value = sol.min_energy;
        out.best.solution = std::move(sol);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInfeasible) {
        ++out.stats.skipped;
      } else if (e.code() == ErrorCode::kSolverFailure) {
        ++out.stats.failed;
      } else {
        throw;
      }
    }
  }
  return out;
}

RowOutcome search(const std::vector<Row>& rows, const SystemParams& params,
                  const Topology& topo, const PlannerConfig& config,
                  const std::optional<std::vector<double>>& seed_lambda) {
  std::vector<RowOutcome> results(rows.size());
  const unsigned workers = std::max(
      1u, std::min<unsigned>(config.workers, static_cast<unsigned>(rows.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      results[i] = solve_row(rows[i], params, topo, config, seed_lambda);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
          for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size() || failed.load()) return;
            try {
              results[i] = solve_row(rows[i], params, topo, config, seed_lambda);
            } catch (...) {
              if (!failed.exchange(true)) failure = std::current_exception();
              return;
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  RowOutcome total;
  for (auto& r : results) {
    merge_stats(total.stats, r.stats);
    if (r.best.have && improves(r.best.value, r.best.window, total.best)) {
      total.best = std::move(r.best);
    }
  }
  return total;
}

// Axis values of the grid {lo + m step} (plus hi) within radius of center.
std::vector<double> local_axis(double center, double radius, double step,
                               double lo, double hi) {
  std::vector<double> out{center};
  const double first = std::max(lo, center - radius);
  const double last = std::min(hi, center + radius);
  auto m = static_cast<long long>(std::ceil((first - lo) / step - 1e-9));
  for (;; ++m) {
    const double x = lo + static_cast<double>(m) * step;
    if (x > last + 1e-12) break;
    if (x <= hi) out.push_back(x);
  }
  if (std::abs(hi - center) <= radius) out.push_back(hi);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Row> local_rows(Window around, double radius, double step,
                            double lo, double hi) {
  const auto xi = local_axis(around.lo, radius, step, lo, hi);
  const auto xf = local_axis(around.hi, radius, step, lo, hi);
  std::vector<Row> rows;
  for (double a : xi) {
    Row r{a, {}};
    for (double b : xf) {
      if (b >= a) r.x_f.push_back(b);
    }
    if (!r.x_f.empty()) rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

void PlannerConfig::validate() const {
  if (!(d_min > 0.0) || !std::isfinite(d_min)) {
    throw_invalid("planner.d_min must be positive");
  }
  if (!(gap_tol > 0.0)) throw_invalid("planner.gap_tol must be positive");
  if (workers == 0) throw_invalid("planner.workers must be at least 1");
  if (refine) {
    if (!(refine_radius > 0.0)) {
      throw_invalid("planner.refine_radius must be positive");
    }
    if (!(refine_step > 0.0)) {
      throw_invalid("planner.refine_step must be positive");
    }
  }
  if (!(tie_tolerance >= 0.0) || !(pool_tie_tolerance >= tie_tolerance)) {
    throw_invalid("planner tie tolerances must satisfy 0 <= tie <= pool tie");
  }
}

P2Options PlannerConfig::p2_options() const {
  P2Options opts;
  opts.gap_tol = gap_tol;
  opts.dual.tie_tolerance = tie_tolerance;
  opts.dual.pool_tie_tolerance = pool_tie_tolerance;
  return opts;
}

std::vector<double> window_axis(double lo, double hi, double step) {
  if (!(step > 0.0)) throw_invalid("grid step must be positive");
  std::vector<double> axis;
  for (long long m = 0;; ++m) {
    const double x = lo + static_cast<double>(m) * step;
    if (x >= hi - 1e-9 * step) break;
    axis.push_back(x);
  }
  axis.push_back(hi);
  return axis;
}

double grid_sensitivity_bound(const SystemParams& params, double d) {
  const double h = params.altitude;
  return 2.0 * params.duration * params.gain() * d / (h * h * h);
}

std::optional<P11Solution> solve_p11(Window window, const SystemParams& params,
                                     const Topology& topo,
                                     const PlannerConfig& config) {
  config.validate();
  if (window.hi < window.lo) throw_invalid("window must satisfy x_I <= x_F");
  if (!window_fits(window, params)) return std::nullopt;
  std::optional<P2Instance> inst;
  try {
    inst = P2Instance::for_window(params, topo, window);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInfeasible) return std::nullopt;
    throw;
  }
  P11Solution out;
  out.window = window;
  out.p2 = solve_p2(*inst, config.p2_options());
  out.trajectory = assemble_shf(out.p2.schedule, params);
  out.energies = out.p2.energies;
  out.min_energy = out.p2.min_energy;
  return out;
}

P2Solution solve_speed_free(const SystemParams& params, const Topology& topo,
                            const PlannerConfig& config) {
  return solve_p2(P2Instance::speed_free(params, topo), config.p2_options());
}

double speed_free_upper_bound(const SystemParams& params, const Topology& topo,
                              const PlannerConfig& config) {
  // The dual value, not the recovered primal: it bounds the relaxation from
  // above even when the primal is short by up to the gap tolerance.
  return solve_speed_free(params, topo, config).certificate.dual_value;
}

SolveReport solve_p1(const SystemParams& params, const Topology& topo,
                     const PlannerConfig& config) {
  params.validate();
  config.validate();
  const double lo = topo.front();
  const double hi = topo.back();

  const std::vector<double> axis = window_axis(lo, hi, config.d_min);
  std::vector<Row> rows;
  rows.reserve(axis.size());
  for (std::size_t i = 0; i < axis.size(); ++i) {
    rows.push_back(Row{axis[i], std::vector<double>(axis.begin() + i, axis.end())});
  }
  RowOutcome result = search(rows, params, topo, config, std::nullopt);

  if (config.refine && result.best.have) {
    // Two passes: the full radius at a medium step, then the target step
    // around the new best.
    const double mid_step = std::max(config.refine_step, config.refine_radius / 10.0);
    std::vector<std::pair<double, double>> stages;  // (step, radius)
    if (mid_step < config.d_min) stages.emplace_back(mid_step, config.refine_radius);
    if (config.refine_step < std::min(mid_step, config.d_min)) {
      stages.emplace_back(config.refine_step, std::min(mid_step, config.d_min));
    }
    for (const auto& [step, radius] : stages) {
      const auto local = local_rows(result.best.window, radius, step, lo, hi);
      RowOutcome refined = search(local, params, topo, config,
                                  result.best.solution.certificate.lambda_star);
      merge_stats(result.stats, refined.stats);
      if (refined.best.have &&
          improves(refined.best.value, refined.best.window, result.best)) {
        result.best = std::move(refined.best);
      }
    }
  }
  if (!result.best.have) {
    throw Error(ErrorCode::kSolverFailure, "no window could be solved");
  }

  SolveReport report;
  report.best_window = result.best.window;
  report.schedule = result.best.solution.schedule;
  report.trajectory = assemble_shf(report.schedule, params);
  report.energies = result.best.solution.energies;
  report.min_energy = result.best.solution.min_energy;
  report.certificate = result.best.solution.certificate;
  report.grid_stats = result.stats;
  report.upper_bound = speed_free_upper_bound(params, topo, config);
  return report;
}

}  // namespace shf
