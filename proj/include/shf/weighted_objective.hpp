#pragma once

// Global maximization of the weighted power F(x) = sum_k lambda_k Q_k(x)
// over a window of the line. This is the inner maximization of the dual
// function: every maximizer is a candidate hover point.

#include <span>
#include <vector>

#include "shf/model.hpp"

namespace shf {

/// Closed interval [lo, hi] of UAV positions.
struct Window {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }
};

/// Non-negative node weights summing to one.
class SimplexWeights {
 public:
  /// Validates non-negativity and |sum - 1| <= 1e-12 (scaled by K).
  explicit SimplexWeights(std::vector<double> lambda);

  static SimplexWeights uniform(std::size_t k);
  static SimplexWeights vertex(std::size_t k, std::size_t index);

  std::span<const double> values() const { return lambda_; }
  std::size_t size() const { return lambda_.size(); }
  double operator[](std::size_t k) const { return lambda_[k]; }

 private:
  std::vector<double> lambda_;
};

struct MaximizerSet {
  std::vector<double> points;  // ascending
  double value = 0.0;          // F* in watts
  double argmax = 0.0;         // the point attaining value
  double tie_tolerance = 1e-9;
};

double weighted_power(const SystemParams& params, const Topology& topo,
                      std::span<const double> lambda, double x);

double weighted_power_slope(const SystemParams& params, const Topology& topo,
                            std::span<const double> lambda, double x);

/// Roots of F' inside the open window: sign-change brackets on a scan grid
/// of step min(H, window length) / 1000, refined by bisection to 1e-12 m.
/// The scan is halved and repeated (up to 6 times) whenever two roots fall
/// within two scan steps of each other.
std::vector<double> stationary_points(const SystemParams& params,
                                      const Topology& topo,
                                      std::span<const double> lambda,
                                      Window window);

/// F* over the window and every candidate (stationary point or boundary)
/// whose value is within relative tie_tolerance of F*.
MaximizerSet global_maximizers(const SystemParams& params,
                               const Topology& topo,
                               std::span<const double> lambda, Window window,
                               double tie_tolerance = 1e-9);

/// Repeated maximization on one fixed window. The per-node slope tables on
/// the scan grid do not depend on lambda, so they are built once and each
/// call reduces to a weighted sum over the table followed by bisection on
/// the brackets that hold local maxima. Not safe to share between threads.
class WindowMaximizer {
 public:
  WindowMaximizer(const SystemParams& params, const Topology& topo,
                  Window window);

  MaximizerSet maximize(std::span<const double> lambda,
                        double tie_tolerance = 1e-9) const;

  const Window& window() const { return window_; }

 private:
  SystemParams params_;
  Topology topo_;
  Window window_;
  std::vector<double> grid_;
  std::vector<double> slopes_;  // node-major: slopes_[k * grid + j]
  mutable std::vector<double> scratch_;
};

/// Scan step used for a window: min(H, length) / 1000.
double scan_step(const SystemParams& params, Window window);

}  // namespace shf
