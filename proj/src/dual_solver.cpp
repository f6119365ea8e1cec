#include "shf/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>

#include "shf/simplex_lp.hpp"

namespace shf {
namespace {

constexpr double kTiny = 1e-300;

// Ellipsoid {y : (y - c)' P^-1 (y - c) <= 1} in R^n, n >= 1.
class Ellipsoid {
 public:
  Ellipsoid(std::vector<double> center, double radius)
      : n_(center.size()), c_(std::move(center)), p_(n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) p_[i * n_ + i] = radius * radius;
  }

  const std::vector<double>& center() const { return c_; }

  /// Largest half-width of the ellipsoid along a coordinate axis.
  double radius() const {
    double r = 0.0;
    for (std::size_t i = 0; i < n_; ++i) r = std::max(r, p_[i * n_ + i]);
    return std::sqrt(r);
  }

  /// sqrt(a' P a)
  double norm(std::span<const double> a) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double pa = 0.0;
      for (std::size_t j = 0; j < n_; ++j) pa += p_[i * n_ + j] * a[j];
      s += a[i] * pa;
    }
    return std::sqrt(std::max(s, 0.0));
  }

  /// Keeps {y : a'(y - c) <= -alpha * sqrt(a' P a)}, 0 <= alpha < 1.
  void cut(std::span<const double> a, double alpha) {
    const double nrm = norm(a);
    if (!(nrm > 0.0)) return;
    std::vector<double> b(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) b[i] += p_[i * n_ + j] * a[j];
      b[i] /= nrm;
    }
    const double n = static_cast<double>(n_);
    if (n_ == 1) {
      c_[0] -= 0.5 * (1.0 + alpha) * b[0];
      const double r = 0.5 * (1.0 - alpha) * std::sqrt(p_[0]);
      p_[0] = r * r;
      return;
    }
    const double step = (1.0 + n * alpha) / (n + 1.0);
    for (std::size_t i = 0; i < n_; ++i) c_[i] -= step * b[i];
    const double scale = n * n / (n * n - 1.0) * (1.0 - alpha * alpha);
    const double shrink = 2.0 * (1.0 + n * alpha) / ((n + 1.0) * (1.0 + alpha));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        const double v = scale * (p_[i * n_ + j] - shrink * b[i] * b[j]);
        p_[i * n_ + j] = v;
        p_[j * n_ + i] = v;
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<double> c_;
  std::vector<double> p_;
};

std::vector<double> full_lambda(const std::vector<double>& y) {
  std::vector<double> l(y.size() + 1);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    l[i] = y[i];
    s += y[i];
  }
  l.back() = std::max(0.0, 1.0 - s);
  return l;
}

// Largest distance from c to a vertex of {y >= 0, sum y <= 1}.
double simplex_cover_radius(const std::vector<double>& c) {
  double norm0 = 0.0;
  for (double v : c) norm0 += v * v;
  double r2 = norm0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    r2 = std::max(r2, norm0 - c[i] * c[i] + (1.0 - c[i]) * (1.0 - c[i]));
  }
  return std::sqrt(r2);
}

std::vector<double> merge_points(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double relative_gap(double dual, double primal) {
  return (dual - primal) / std::max(std::abs(dual), kTiny);
}

// Exact solution when the hover part has no freedom: zero budget or a
// single-point window. f is then linear in lambda and minimized at a vertex.
std::optional<DualRun> exact_dual(const P2Instance& inst) {
  const bool no_budget = inst.hover_budget <= 0.0;
  const bool point_window = inst.window.length() <= 0.0;
  if (!no_budget && !point_window) return std::nullopt;
  const std::size_t k_count = inst.topo.size();
  std::size_t best = 0;
  std::vector<double> g(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    g[k] = inst.sweep_energy[k];
    if (!no_budget) {
      g[k] += inst.hover_budget *
              received_power(inst.params, inst.topo[k], inst.window.lo);
    }
    if (g[k] < g[best]) best = k;
  }
  DualRun run;
  run.lambda.assign(k_count, 0.0);
  run.lambda[best] = 1.0;
  run.best_value = g[best];
  run.stop_reason = "exact";
  if (!no_budget) run.pool = {inst.window.lo};
  return run;
}

}  // namespace

P2Instance P2Instance::for_window(const SystemParams& params,
                                  const Topology& topo, Window window) {
  params.validate();
  if (window.hi < window.lo) throw_invalid("window must satisfy x_I <= x_F");
  P2Instance inst{params, topo, window, 0.0, {}};
  const double sweep_time = window.length() / params.max_speed;
  double budget = params.duration - sweep_time;
  if (budget < 0.0) {
    if (budget < -1e-12 * params.duration) {
      throw Error(ErrorCode::kInfeasible,
                  "window sweep takes longer than the mission");
    }
    budget = 0.0;
  }
  inst.hover_budget = budget;
  inst.sweep_energy.resize(topo.size());
  for (std::size_t k = 0; k < topo.size(); ++k) {
    inst.sweep_energy[k] = cruise_energy(params, topo[k], window.lo, window.hi,
                                         params.max_speed);
  }
  return inst;
}

P2Instance P2Instance::speed_free(const SystemParams& params,
                                  const Topology& topo) {
  params.validate();
  return P2Instance{params, topo, Window{topo.front(), topo.back()},
                    params.duration, EnergyVector(topo.size(), 0.0)};
}

DualEvaluation dual_value(const P2Instance& inst,
                          std::span<const double> lambda) {
  if (inst.hover_budget < 0.0) {
    throw Error(ErrorCode::kInfeasible, "negative hover budget");
  }
  DualEvaluation ev;
  ev.maximizers = global_maximizers(inst.params, inst.topo, lambda,
                                    inst.window);
  const double x_star = ev.maximizers.points.front();
  ev.subgradient.resize(inst.topo.size());
  double value = inst.hover_budget * ev.maximizers.value;
  for (std::size_t k = 0; k < inst.topo.size(); ++k) {
    value += lambda[k] * inst.sweep_energy[k];
    ev.subgradient[k] =
        inst.sweep_energy[k] +
        inst.hover_budget * received_power(inst.params, inst.topo[k], x_star);
  }
  ev.value = value;
  return ev;
}

TimeSharing time_sharing_lp(const P2Instance& inst,
                            std::span<const double> candidates) {
  const std::size_t k_count = inst.topo.size();
  TimeSharing out;
  out.schedule.x_i = inst.window.lo;
  out.schedule.x_f = inst.window.hi;
  if (inst.hover_budget <= 0.0) {
    out.schedule.points.assign(candidates.begin(), candidates.end());
    out.schedule.durations.assign(candidates.size(), 0.0);
    out.value = *std::min_element(inst.sweep_energy.begin(),
                                  inst.sweep_energy.end());
    return out;
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kSolverFailure,
                "time-sharing LP needs at least one candidate hover point");
  }
  const std::size_t n = candidates.size();
  for (double x : candidates) {
    if (!inst.window.contains(x, 1e-9)) {
      throw_invalid("candidate hover point lies outside the window");
    }
  }
  // Durations as fractions of the budget, energies scaled to O(1).
  std::vector<std::vector<double>> q(k_count, std::vector<double>(n));
  double scale = 0.0;
  for (std::size_t k = 0; k < k_count; ++k) {
    scale = std::max(scale, inst.sweep_energy[k]);
    for (std::size_t i = 0; i < n; ++i) {
      q[k][i] = inst.hover_budget *
                received_power(inst.params, inst.topo[k], candidates[i]);
      scale = std::max(scale, q[k][i]);
    }
  }
  LpProblem lp;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = 1.0;
  for (std::size_t k = 0; k < k_count; ++k) {
    std::vector<double> row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = -q[k][i] / scale;
    row[n] = 1.0;
    lp.a_ub.push_back(std::move(row));
    lp.b_ub.push_back(inst.sweep_energy[k] / scale);
  }
  std::vector<double> sum_row(n + 1, 1.0);
  sum_row[n] = 0.0;
  lp.a_eq.push_back(std::move(sum_row));
  lp.b_eq.push_back(1.0);

  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kSolverFailure, "time-sharing LP did not solve");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += res.x[i];
  out.schedule.points.assign(candidates.begin(), candidates.end());
  out.schedule.durations.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.schedule.durations[i] = inst.hover_budget * res.x[i] / total;
  }
  double value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < k_count; ++k) {
    double e = inst.sweep_energy[k];
    for (std::size_t i = 0; i < n; ++i) {
      e += out.schedule.durations[i] *
           received_power(inst.params, inst.topo[k], candidates[i]);
    }
    value = std::min(value, e);
  }
  out.value = value;
  return out;
}

DualRun solve_dual(const P2Instance& inst, const DualOptions& opts) {
  const std::size_t k_count = inst.topo.size();
  if (inst.hover_budget < 0.0) {
    throw Error(ErrorCode::kInfeasible, "negative hover budget");
  }
  if (auto exact = exact_dual(inst)) return *exact;

  const WindowMaximizer maximizer(inst.params, inst.topo, inst.window);
  DualRun run;
  std::deque<std::vector<double>> recent;
  double last_primal = std::numeric_limits<double>::quiet_NaN();
  double max_primal = -std::numeric_limits<double>::infinity();
  auto below_primal = [&](double dual) {
    return dual < max_primal - 1e-12 * std::abs(max_primal);
  };
  double last_gap = std::numeric_limits<double>::quiet_NaN();

  // Evaluates f at a full lambda; returns value and reduced subgradient.
  auto evaluate = [&](const std::vector<double>& lambda,
                      std::vector<double>& reduced_grad) {
    const MaximizerSet ms = maximizer.maximize(lambda, opts.pool_tie_tolerance);
    recent.push_back(ms.points);
    if (static_cast<int>(recent.size()) > opts.pool_iterates) recent.pop_front();
    double value = inst.hover_budget * ms.value;
    std::vector<double> g(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
      value += lambda[k] * inst.sweep_energy[k];
      g[k] = inst.sweep_energy[k] +
             inst.hover_budget *
                 received_power(inst.params, inst.topo[k], ms.argmax);
    }
    reduced_grad.resize(k_count - 1);
    for (std::size_t k = 0; k + 1 < k_count; ++k) {
      reduced_grad[k] = g[k] - g[k_count - 1];
    }
    return value;
  };
  auto pooled = [&] {
    std::vector<double> pts;
    for (const auto& r : recent) pts.insert(pts.end(), r.begin(), r.end());
    return merge_points(std::move(pts));
  };

  if (k_count == 1) {
    std::vector<double> lambda{1.0};
    std::vector<double> grad;
    run.best_value = evaluate(lambda, grad);
    run.lambda = lambda;
    run.pool = pooled();
    run.stop_reason = "single node";
    return run;
  }

  const std::size_t n = k_count - 1;
  std::vector<double> center(n, 1.0 / static_cast<double>(k_count));
  if (opts.warm_start && opts.warm_start->size() == k_count) {
    double s = 0.0;
    for (std::size_t i = 0; i < k_count; ++i) {
      s += std::max(0.0, (*opts.warm_start)[i]);
    }
    if (s > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        center[i] = std::max(0.0, (*opts.warm_start)[i]) / s;
      }
    }
  }
  Ellipsoid ell(center, simplex_cover_radius(center) * (1.0 + 1e-9));

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_y = center;
  std::vector<double> best_history;
  std::vector<double> grad;
  std::vector<double> cut(n);
  const int stall_window =
      opts.stall_window * static_cast<int>(std::max<std::size_t>(1, n * (n + 1) / 2));

  for (int iter = 1;; ++iter) {
    if (iter > opts.max_iterations) {
      run.lambda = full_lambda(best_y);
      run.best_value = best;
      run.iterations = iter - 1;
      run.pool = pooled();
      run.stop_reason = "iteration cap";
      throw DualFailure("ellipsoid method hit its iteration cap",
                        std::move(run));
    }
    const auto& c = ell.center();

    // Most violated simplex constraint, as a deep cut.
    double worst_alpha = 0.0;
    int worst = -1;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += c[i];
      if (c[i] < 0.0) {
        std::fill(cut.begin(), cut.end(), 0.0);
        cut[i] = -1.0;
        const double alpha = -c[i] / ell.norm(cut);
        if (alpha > worst_alpha) {
          worst_alpha = alpha;
          worst = static_cast<int>(i);
        }
      }
    }
    if (sum > 1.0) {
      std::fill(cut.begin(), cut.end(), 1.0);
      const double alpha = (sum - 1.0) / ell.norm(cut);
      if (alpha > worst_alpha) {
        worst_alpha = alpha;
        worst = static_cast<int>(n);
      }
    }

    double f_center = std::numeric_limits<double>::quiet_NaN();
    bool stop = false;
    if (worst >= 0) {
      std::fill(cut.begin(), cut.end(), 0.0);
      if (worst == static_cast<int>(n)) {
        std::fill(cut.begin(), cut.end(), 1.0);
      } else {
        cut[static_cast<std::size_t>(worst)] = -1.0;
      }
      if (worst_alpha >= 1.0) {
        run.stop_reason = "empty feasible intersection";
        stop = true;
      } else {
        ell.cut(cut, worst_alpha);
      }
    } else {
      f_center = evaluate(full_lambda(c), grad);
      if (below_primal(f_center)) ++run.weak_duality_violations;
      if (f_center < best) {
        best = f_center;
        best_y = c;
      }
      const double nrm = ell.norm(grad);
      if (!(nrm > 0.0)) {
        run.stop_reason = "zero subgradient";
        stop = true;
      } else {
        const double alpha = (f_center - best) / nrm;
        if (alpha >= 1.0) {
          run.stop_reason = "no improving point left";
          stop = true;
        } else {
          ell.cut(grad, alpha);
        }
      }
    }
    best_history.push_back(best);

    if (!stop && ell.radius() < opts.radius_tol) {
      run.stop_reason = "radius";
      stop = true;
    }
    if (!stop && iter > stall_window && std::isfinite(best)) {
      const double then = best_history[best_history.size() - 1 -
                                       static_cast<std::size_t>(stall_window)];
      if (std::isfinite(then) &&
          then - best <= opts.stall_rel_tol * std::abs(best)) {
        run.stop_reason = "stalled";
        stop = true;
      }
    }
    const bool check_gap = opts.gap_stop > 0.0 && opts.gap_check_every > 0 &&
                           iter % opts.gap_check_every == 0;
    if ((check_gap || stop || opts.record_log) && std::isfinite(best) &&
        (check_gap || stop)) {
      last_primal = time_sharing_lp(inst, pooled()).value;
      max_primal = std::max(max_primal, last_primal);
      if (below_primal(best)) ++run.weak_duality_violations;
      last_gap = relative_gap(best, last_primal);
      if (!stop && last_gap <= opts.gap_stop) {
        run.stop_reason = "certified gap";
        stop = true;
      }
    }
    if (opts.record_log) {
      run.log.push_back({iter, f_center, best, last_primal, last_gap});
    }
    if (stop) {
      run.iterations = iter;
      break;
    }
  }
  run.lambda = full_lambda(best_y);
  run.best_value = best;
  run.pool = pooled();
  return run;
}

P2Solution solve_p2(const P2Instance& inst, const P2Options& opts) {
  const DualRun run = solve_dual(inst, opts.dual);
  P2Solution sol;
  sol.iterations = run.iterations;
  sol.log = run.log;

  std::vector<double> candidates = run.pool;
  if (inst.hover_budget > 0.0) {
    const MaximizerSet at_best =
        global_maximizers(inst.params, inst.topo, run.lambda, inst.window,
                          opts.dual.pool_tie_tolerance);
    candidates.insert(candidates.end(), at_best.points.begin(),
                      at_best.points.end());
  }
  candidates = merge_points(std::move(candidates));

  TimeSharing ts = time_sharing_lp(inst, candidates);
  HoverSchedule schedule = ts.schedule;
  for (double& d : schedule.durations) {
    if (d <= 1e-12 * inst.hover_budget) d = 0.0;
  }
  schedule.canonicalize();
  const double total = schedule.total_duration();
  if (total > 0.0) {
    for (double& d : schedule.durations) d *= inst.hover_budget / total;
  }
  sol.schedule = std::move(schedule);

  sol.energies = inst.sweep_energy;
  for (std::size_t k = 0; k < inst.topo.size(); ++k) {
    for (std::size_t i = 0; i < sol.schedule.points.size(); ++i) {
      sol.energies[k] += hover_energy(inst.params, inst.topo[k],
                                      sol.schedule.points[i],
                                      sol.schedule.durations[i]);
    }
  }
  sol.min_energy = *std::min_element(sol.energies.begin(), sol.energies.end());
  sol.certificate.lambda_star = run.lambda;
  sol.certificate.dual_value = run.best_value;
  sol.certificate.primal_value = sol.min_energy;
  sol.certificate.gap = relative_gap(run.best_value, sol.min_energy);
  sol.weak_duality_violations = run.weak_duality_violations;
  if (sol.min_energy > run.best_value * (1.0 + 1e-12)) ++sol.weak_duality_violations;
  sol.gap_warning = sol.certificate.gap > opts.gap_tol;
  return sol;
}

void write_iterate_log(std::ostream& out, const std::vector<IterateLog>& log) {
  out << "iter,dual_value,primal_value,gap\n";
  char buf[128];
  for (const auto& row : log) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g\n", row.iter,
                  row.dual_value, row.primal_value, row.gap);
    out << buf;
  }
}

}  // namespace shf
