#include "shf/weighted_objective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace shf {
namespace {

constexpr double kBisectionTol = 1e-12;
constexpr int kMaxScanRefinements = 6;

// Root location on the scan grid: a sign change inside cell [j, j+1]
// (`exact` false) or an exact zero at grid point j.
struct Root {
  std::size_t j;
  bool exact;
  bool is_max;  // F' goes from + to - (only meaningful when !exact)
};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

std::vector<Root> scan_roots(std::span<const double> slope) {
  std::vector<Root> roots;
  const std::size_t n = slope.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const int s0 = sign_of(slope[j]);
    const int s1 = sign_of(slope[j + 1]);
    if (s0 == 0 && j > 0) roots.push_back({j, true, false});
    if (s0 * s1 < 0) roots.push_back({j, false, s0 > 0});
  }
  return roots;
}

// Two roots within two scan steps can hide a pair of roots in one cell.
bool roots_crowded(const std::vector<Root>& roots) {
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (roots[i].j - roots[i - 1].j < 2) return true;
  }
  return false;
}

template <class Slope>
double bisect(const Slope& slope, double a, double b) {
  double fa = slope(a);
  while (b - a > kBisectionTol) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = slope(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> make_grid(Window w, double step) {
  const double len = w.length();
  const auto n = static_cast<std::size_t>(std::ceil(len / step - 1e-9));
  std::vector<double> grid(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    grid[j] = w.lo + len * static_cast<double>(j) / static_cast<double>(n);
  }
  grid[n] = w.hi;
  return grid;
}

MaximizerSet select_maximizers(const SystemParams& params,
                               const Topology& topo,
                               std::span<const double> lambda,
                               std::vector<double> candidates,
                               double tie_tolerance) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  std::vector<double> values(candidates.size());
  double best = -INFINITY;
  MaximizerSet out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    values[i] = weighted_power(params, topo, lambda, candidates[i]);
    if (values[i] > best) {
      best = values[i];
      out.argmax = candidates[i];
    }
  }
  out.value = best;
  out.tie_tolerance = tie_tolerance;
  const double floor = (1.0 - tie_tolerance) * best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (values[i] >= floor) out.points.push_back(candidates[i]);
  }
  return out;
}

}  // namespace

SimplexWeights::SimplexWeights(std::vector<double> lambda)
    : lambda_(std::move(lambda)) {
  if (lambda_.empty()) throw_invalid("simplex weights must be non-empty");
  double sum = 0.0;
  for (double l : lambda_) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw_invalid("simplex weights must be non-negative");
    }
    sum += l;
  }
  const double tol = 1e-12 * static_cast<double>(lambda_.size());
  if (std::abs(sum - 1.0) > tol) {
    throw_invalid("simplex weights must sum to one");
  }
}

SimplexWeights SimplexWeights::uniform(std::size_t k) {
  return SimplexWeights(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

SimplexWeights SimplexWeights::vertex(std::size_t k, std::size_t index) {
  if (index >= k) throw_invalid("vertex index out of range");
  std::vector<double> l(k, 0.0);
  l[index] = 1.0;
  return SimplexWeights(std::move(l));
}

double weighted_power(const SystemParams& params, const Topology& topo,
                      std::span<const double> lambda, double x) {
  double f = 0.0;
  for (std::size_t k = 0; k < topo.size(); ++k) {
    if (lambda[k] != 0.0) f += lambda[k] * received_power(params, topo[k], x);
  }
  return f;
}

double weighted_power_slope(const SystemParams& params, const Topology& topo,
                            std::span<const double> lambda, double x) {
  double f = 0.0;
  for (std::size_t k = 0; k < topo.size(); ++k) {
    if (lambda[k] != 0.0) {
      f += lambda[k] * received_power_slope(params, topo[k], x);
    }
  }
  return f;
}

double scan_step(const SystemParams& params, Window window) {
  return std::min(params.altitude, window.length()) / 1000.0;
}

std::vector<double> stationary_points(const SystemParams& params,
                                      const Topology& topo,
                                      std::span<const double> lambda,
                                      Window window) {
  if (window.hi < window.lo) throw_invalid("window must satisfy lo <= hi");
  if (lambda.size() != topo.size()) {
    throw_invalid("weights and topology differ in length");
  }
  if (window.length() <= 0.0) return {};
  auto slope = [&](double x) {
    return weighted_power_slope(params, topo, lambda, x);
  };

  double step = scan_step(params, window);
  std::vector<double> grid;
  std::vector<Root> roots;
  for (int refinement = 0;; ++refinement) {
    grid = make_grid(window, step);
    std::vector<double> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) values[j] = slope(grid[j]);
    roots = scan_roots(values);
    if (!roots_crowded(roots) || refinement == kMaxScanRefinements) break;
    step *= 0.5;
  }

  std::vector<double> out;
  out.reserve(roots.size());
  for (const auto& r : roots) {
    out.push_back(r.exact ? grid[r.j] : bisect(slope, grid[r.j], grid[r.j + 1]));
  }
  return out;
}

MaximizerSet global_maximizers(const SystemParams& params,
                               const Topology& topo,
                               std::span<const double> lambda, Window window,
                               double tie_tolerance) {
  std::vector<double> candidates =
      stationary_points(params, topo, lambda, window);
  candidates.push_back(window.lo);
  candidates.push_back(window.hi);
  return select_maximizers(params, topo, lambda, std::move(candidates),
                           tie_tolerance);
}

WindowMaximizer::WindowMaximizer(const SystemParams& params,
                                 const Topology& topo, Window window)
    : params_(params), topo_(topo), window_(window) {
  if (window.hi < window.lo) throw_invalid("window must satisfy lo <= hi");
  if (window.length() <= 0.0) return;
  grid_ = make_grid(window, scan_step(params, window));
  const std::size_t n = grid_.size();
  slopes_.resize(topo.size() * n);
  for (std::size_t k = 0; k < topo.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      slopes_[k * n + j] = received_power_slope(params, topo[k], grid_[j]);
    }
  }
  scratch_.resize(n);
}

MaximizerSet WindowMaximizer::maximize(std::span<const double> lambda,
                                       double tie_tolerance) const {
  if (lambda.size() != topo_.size()) {
    throw_invalid("weights and topology differ in length");
  }
  std::vector<double> candidates{window_.lo, window_.hi};
  if (!grid_.empty()) {
    const std::size_t n = grid_.size();
    std::fill(scratch_.begin(), scratch_.end(), 0.0);
    for (std::size_t k = 0; k < topo_.size(); ++k) {
      const double l = lambda[k];
      if (l == 0.0) continue;
      const double* row = slopes_.data() + k * n;
      double* acc = scratch_.data();
      for (std::size_t j = 0; j < n; ++j) acc[j] += l * row[j];
    }
    const auto roots = scan_roots(scratch_);
    if (roots_crowded(roots)) {
      auto sp = stationary_points(params_, topo_, lambda, window_);
      candidates.insert(candidates.end(), sp.begin(), sp.end());
    } else {
      auto slope = [&](double x) {
        return weighted_power_slope(params_, topo_, lambda, x);
      };
      for (const auto& r : roots) {
        if (r.exact) {
          candidates.push_back(grid_[r.j]);
        } else if (r.is_max) {
          candidates.push_back(bisect(slope, grid_[r.j], grid_[r.j + 1]));
        }
      }
    }
  }
  return select_maximizers(params_, topo_, lambda, std::move(candidates),
                           tie_tolerance);
}

}  // namespace shf
